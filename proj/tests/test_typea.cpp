#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "negcat/typea.hpp"

using namespace negcat;

namespace {

// Random invertible matrix built from row operations on the identity.
FpMatrix random_invertible(int n, uint32_t p, std::mt19937_64& rng) {
  FpMatrix m = FpMatrix::identity(n, p);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<uint32_t> scalar(1, p - 1);
  for (int step = 0; step < 4 * n; ++step) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    uint32_t s = scalar(rng);
    for (int c = 0; c < n; ++c) m.add_at(i, c, fp_mul(s, m.at(j, c), p));
  }
  return m;
}

// Conjugate r by random base changes at every vertex.
Rep rebased(const Rep& r, std::mt19937_64& rng) {
  std::vector<FpMatrix> g, ginv;
  for (int v = 0; v < r.n; ++v) {
    FpMatrix m = random_invertible(r.dim[v], r.p, rng);
    g.push_back(m);
    // Invert by solving m * x = e_i columnwise.
    FpMatrix inv(r.dim[v], r.dim[v], r.p);
    for (int i = 0; i < r.dim[v]; ++i) {
      FpVec e(r.dim[v], 0);
      e[i] = 1;
      auto x = m.solve(e);
      REQUIRE(x.has_value());
      for (int j = 0; j < r.dim[v]; ++j) inv.set(j, i, (*x)[j]);
    }
    ginv.push_back(inv);
  }
  Rep out = r;
  for (int v = 0; v + 1 < r.n; ++v) out.map[v] = g[v + 1] * r.map[v] * ginv[v];
  return out;
}

int ext1_closed_form(int n, Interval x, Interval y) {
  return (x.lo < y.lo && y.lo <= x.hi + 1 && x.hi + 1 <= y.hi) ? 1 : 0;
}

}  // namespace

TEST_CASE("hom closed form matches the commuting-square solver on all pairs") {
  for (int n = 1; n <= 6; ++n)
    for (Interval x : all_intervals(n))
      for (Interval y : all_intervals(n)) {
        int expected = hom_dim(x, y);
        CAPTURE(n, x.lo, x.hi, y.lo, y.hi);
        REQUIRE(hom_dim_oracle(interval_rep(n, x, 2), interval_rep(n, y, 2)) == expected);
      }
  // Dimensions do not depend on the coefficient field.
  for (Interval x : all_intervals(4))
    for (Interval y : all_intervals(4))
      REQUIRE(hom_dim_oracle(interval_rep(4, x, 5), interval_rep(4, y, 5)) == hom_dim(x, y));
}

TEST_CASE("hom examples") {
  REQUIRE(hom_dim({2, 2}, {1, 2}) == 1);
  REQUIRE(hom_dim({1, 2}, {2, 2}) == 0);
  REQUIRE(hom_dim({2, 3}, {2, 3}) == 1);
  REQUIRE(hom_dim({1, 3}, {2, 3}) == 0);
}

TEST_CASE("ext1 from the projective resolution matches the closed form") {
  for (int n = 1; n <= 6; ++n)
    for (Interval x : all_intervals(n))
      for (Interval y : all_intervals(n)) {
        CAPTURE(n, x.lo, x.hi, y.lo, y.hi);
        int via_resolution = ext1_dim(n, x, y);
        REQUIRE(via_resolution == ext1_closed_form(n, x, y));
        // Euler count from the two-term resolution.
        int p1 = x.hi < n ? hom_dim(projective(n, x.hi + 1), y) : 0;
        int p0 = hom_dim(projective(n, x.lo), y);
        REQUIRE(via_resolution == p1 - p0 + hom_dim(x, y));
      }
}

TEST_CASE("ext1 special values") {
  REQUIRE(ext1_dim(3, {2, 2}, {3, 3}) == 1);
  REQUIRE(extension_middle(3, {2, 2}, {3, 3}, 2) == ModuleObject{{{2, 3}}});
  for (int n = 1; n <= 5; ++n)
    for (Interval x : all_intervals(n)) {
      REQUIRE(ext1_dim(n, x, x) == 0);
      for (Interval y : all_intervals(n)) REQUIRE(ext1_dim(n, projective(n, x.lo), y) == 0);
    }
}

TEST_CASE("extension middle term splits into the two crossover intervals") {
  for (int n = 2; n <= 5; ++n)
    for (Interval x : all_intervals(n))
      for (Interval y : all_intervals(n)) {
        if (ext1_dim(n, x, y) != 1) continue;
        CAPTURE(n, x.lo, x.hi, y.lo, y.hi);
        ModuleObject expected;
        expected.add({x.lo, y.hi});
        if (y.lo <= x.hi) expected.add({y.lo, x.hi});
        REQUIRE(extension_middle(n, x, y, 2) == expected);
        REQUIRE(extension_middle(n, x, y, 3) == expected);
      }
}

TEST_CASE("decompose recovers interval multisets") {
  Rep ident = interval_rep(2, {1, 2}, 2);
  REQUIRE(decompose(ident) == ModuleObject{{{1, 2}}});

  Rep split = zero_rep(2, 2);
  split.dim = {1, 1};
  split.map[0] = FpMatrix(1, 1, 2);
  REQUIRE(decompose(split) == (ModuleObject{{{1, 1}, {2, 2}}}));

  ModuleObject m;
  m.add({1, 3});
  m.add({2, 2});
  REQUIRE(decompose(rep_of(3, m, 2)) == m);
}

TEST_CASE("decompose is invariant under base change") {
  std::mt19937_64 rng(20240817);
  for (int n : {2, 3, 4, 5}) {
    auto intervals = all_intervals(n);
    std::uniform_int_distribution<size_t> pick(0, intervals.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      ModuleObject m;
      int count = 1 + static_cast<int>(trial % 4);
      for (int i = 0; i < count; ++i) m.add(intervals[pick(rng)]);
      for (uint32_t p : {2u, 3u}) {
        Rep r = rep_of(n, m, p);
        REQUIRE(decompose(rebased(r, rng)) == m);
      }
    }
  }
}

TEST_CASE("tau shifts intervals one step and vanishes on projectives") {
  for (int n = 1; n <= 6; ++n)
    for (Interval x : all_intervals(n)) {
      auto t = tau(n, x);
      if (x.hi == n) {
        REQUIRE_FALSE(t.has_value());
      } else {
        REQUIRE(t.has_value());
        REQUIRE(*t == Interval{x.lo + 1, x.hi + 1});
      }
    }
  REQUIRE(*tau(3, {2, 2}) == Interval{3, 3});
}

TEST_CASE("tau satisfies the duality with ext1 exhaustively") {
  for (int n = 1; n <= 5; ++n)
    for (Interval x : all_intervals(n)) {
      auto t = tau(n, x);
      if (!t) continue;
      for (Interval y : all_intervals(n)) REQUIRE(ext1_dim(n, x, y) == hom_dim(y, *t));
    }
}

TEST_CASE("subspace restriction and quotient of an interval") {
  // Inside [1,3] the span of vertices {2,3} is a subrepresentation.
  Rep r = interval_rep(3, {1, 3}, 2);
  std::vector<std::vector<FpVec>> gens(3);
  gens[1].push_back({1});
  gens[2].push_back({1});
  REQUIRE(decompose(restrict_to_subspace(r, gens)) == ModuleObject{{{2, 3}}});
  REQUIRE(decompose(quotient_by_subspace(r, gens)) == ModuleObject{{{1, 1}}});
}

TEST_CASE("kernel and cokernel of a morphism of representations") {
  Rep x = interval_rep(3, {2, 3}, 2);
  Rep y = interval_rep(3, {1, 3}, 2);
  auto basis = hom_basis(x, y);
  REQUIRE(basis.size() == 1);
  REQUIRE(decompose(morphism_kernel(x, y, basis[0])).empty());
  REQUIRE(decompose(morphism_cokernel(x, y, basis[0])) == ModuleObject{{{1, 1}}});

  // The epi [1,3] ->> [1,1] has kernel [2,3].
  Rep z = interval_rep(3, {1, 1}, 2);
  auto epi = hom_basis(y, z);
  REQUIRE(epi.size() == 1);
  REQUIRE(decompose(morphism_kernel(y, z, epi[0])) == ModuleObject{{{2, 3}}});
  REQUIRE(decompose(morphism_cokernel(y, z, epi[0])).empty());
}

TEST_CASE("projective and injective labels") {
  REQUIRE(projective(3, 1) == Interval{1, 3});
  REQUIRE(injective(2) == Interval{1, 2});
  REQUIRE(simple(2) == Interval{2, 2});
  // Hom(P(i), M) is the fiber of M at vertex i.
  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i <= n; ++i)
      for (Interval m : all_intervals(n))
        REQUIRE(hom_dim(projective(n, i), m) == ((m.lo <= i && i <= m.hi) ? 1 : 0));
}
