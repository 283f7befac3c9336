#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "negcat/orbit.hpp"

using namespace negcat;

namespace {

OrbitObject obj(std::initializer_list<Diagonal> ds) {
  OrbitObject out;
  for (auto d : ds) out.add(d);
  return out;
}

// Rank of u -> f . u on hom spaces from a probe object.
int post_rank(const OrbitContext& C, const OrbitObject& probe, const OrbitMorphism& f) {
  auto basis = C.hom_basis_C(probe, f.src);
  if (basis.empty()) return 0;
  std::vector<FpVec> rows;
  for (const auto& b : basis) rows.push_back(C.mor_to_vec(C.compose(f, b)));
  if (rows[0].empty()) return 0;
  return static_cast<int>(FpMatrix::from_rows(rows, static_cast<int>(rows[0].size()), C.prime()).rank());
}

void check_long_exact(const OrbitContext& C, const OrbitMorphism& f, const OrbitTriangle& T) {
  REQUIRE(C.mor_is_zero(C.compose(T.incl, f)));
  REQUIRE(C.mor_is_zero(C.compose(T.proj, T.incl)));
  OrbitMorphism sf = C.shift_mor(f, 1);
  REQUIRE(C.mor_is_zero(C.compose(sf, T.proj)));
  for (auto d : C.all_indecomposables()) {
    OrbitObject t = OrbitObject::of(d);
    int a = post_rank(C, t, f);
    int b = post_rank(C, t, T.incl);
    int c = post_rank(C, t, T.proj);
    int e = post_rank(C, t, sf);
    REQUIRE(b == C.hom_dim_C(t, f.dst) - a);
    REQUIRE(c == C.hom_dim_C(t, T.cone) - b);
    REQUIRE(e == C.hom_dim_C(t, C.shift_C(f.src, 1)) - c);
  }
}

OrbitObject random_object(const OrbitContext& C, std::mt19937& rng, int max_parts) {
  auto all = C.all_indecomposables();
  std::uniform_int_distribution<int> cnt(1, max_parts);
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  OrbitObject out;
  int k = cnt(rng);
  for (int i = 0; i < k; ++i) out.add(all[pick(rng)]);
  return out;
}

OrbitMorphism random_morphism(const OrbitContext& C, std::mt19937& rng, const OrbitObject& x,
                              const OrbitObject& y) {
  auto basis = C.hom_basis_C(x, y);
  OrbitMorphism f = C.zero_mor(x, y);
  std::uniform_int_distribution<int> coin(0, 1);
  for (const auto& b : basis) {
    if (!coin(rng)) continue;
    for (const auto& [k, m] : b.comp) {
      auto it = f.comp.find(k);
      if (it == f.comp.end())
        f.comp[k] = m;
      else
        it->second = it->second + m;
    }
  }
  for (auto it = f.comp.begin(); it != f.comp.end();)
    it = it->second.is_zero() ? f.comp.erase(it) : std::next(it);
  return f;
}

// Searches object pairs until a nonzero morphism shows up; src can be pinned.
OrbitMorphism random_nonzero(const OrbitContext& C, std::mt19937& rng,
                             const OrbitObject* from = nullptr) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    OrbitObject x = from ? *from : random_object(C, rng, 2);
    OrbitObject y = random_object(C, rng, 2);
    if (C.hom_basis_C(x, y).empty()) continue;
    OrbitMorphism f = random_morphism(C, rng, x, y);
    if (!C.mor_is_zero(f)) return f;
  }
  throw std::runtime_error("no nonzero morphism found");
}

const std::vector<Diagonal> kRed = {{0, 3},  {0, 11}, {0, 15}, {4, 11}, {4, 15},
                                    {8, 11}, {8, 15}, {12, 15}, {5, 8}};

}  // namespace

TEST_CASE("admissible diagonals enumerate the expected fans") {
  OrbitContext C(3, 4);
  REQUIRE(C.ngon() == 18);
  auto all = C.all_indecomposables();
  REQUIRE(all.size() == 36);
  REQUIRE(std::is_sorted(all.begin(), all.end()));
  REQUIRE(C.admissible({0, 3}));
  REQUIRE(C.admissible({4, 11}));
  REQUIRE_FALSE(C.admissible({0, 4}));
  REQUIRE_FALSE(C.admissible({3, 4}));
  REQUIRE_FALSE(C.admissible({0, 17}));
  for (auto d : kRed) REQUIRE(C.admissible(d));

  OrbitContext C2(2, 3);
  REQUIRE(C2.ngon() == 10);
  REQUIRE(C2.all_indecomposables().size() == 15);
}

TEST_CASE("canonical lifts match the hand computed table") {
  OrbitContext C(3, 4);
  REQUIRE(C.lift_part({0, 3}) == ShiftedInterval{1, {1, 4}});
  REQUIRE(C.lift_part({4, 11}) == ShiftedInterval{2, {3, 4}});
  REQUIRE(C.lift_part({5, 8}) == ShiftedInterval{3, {4, 4}});
  REQUIRE(C.lift_part({12, 15}) == ShiftedInterval{2, {2, 2}});
  REQUIRE(C.lift_part({0, 15}) == ShiftedInterval{1, {1, 1}});
  REQUIRE(C.lift_part({1, 8}) == ShiftedInterval{2, {1, 3}});
  REQUIRE(C.lift_part({1, 4}) == ShiftedInterval{2, {1, 4}});
  REQUIRE(C.lift_part({4, 15}) == ShiftedInterval{2, {2, 4}});

  for (auto d : C.all_indecomposables()) {
    ShiftedInterval s = C.lift_part(d);
    REQUIRE(C.project_part(s) == d);
    REQUIRE(C.twist_index(s) == 0);
    for (int k = -2; k <= 2; ++k) {
      ShiftedInterval fs = C.F(s, k);
      REQUIRE(C.project_part(fs) == d);
      REQUIRE(C.twist_index(fs) == k);
    }
  }
}

TEST_CASE("rotation formulas agree with the lifted suspension and translate") {
  for (auto [w, n] : {std::pair{3, 4}, std::pair{2, 3}}) {
    OrbitContext C(w, n);
    for (auto d : C.all_indecomposables()) {
      OrbitObject x = OrbitObject::of(d);
      REQUIRE(C.shift_C(x, 1) == OrbitObject::of(C.rotate(d, 1)));
      REQUIRE(C.shift_C(x, -1) == OrbitObject::of(C.rotate(d, -1)));
      REQUIRE(C.tau_diag(d) == C.rotate(d, -(w + 1)));
      REQUIRE(C.tau_C(x) == OrbitObject::of(C.rotate(d, -(w + 1))));
      REQUIRE(C.serre(x) == OrbitObject::of(C.rotate(d, -w)));
      REQUIRE(C.rotate(d, C.ngon()) == d);
    }
  }
  OrbitContext C(3, 4);
  REQUIRE(C.shift_C(obj({{0, 3}})) == obj({{1, 4}}));
  REQUIRE(C.shift_C(obj({{4, 11}})) == obj({{5, 12}}));
  REQUIRE(C.shift_C(obj({{5, 8}})) == obj({{6, 9}}));
  REQUIRE(C.shift_C(obj({{12, 15}})) == obj({{13, 16}}));
  REQUIRE(C.shift_C(obj({{0, 3}, {0, 11}, {4, 11}, {8, 11}})) ==
          obj({{1, 4}, {1, 12}, {5, 12}, {9, 12}}));
}

TEST_CASE("orbit hom dimensions reproduce the frozen extension table") {
  OrbitContext C(3, 4);
  auto ext1 = [&](Diagonal x, Diagonal y) {
    return C.hom_dim_C(OrbitObject::of(x), C.shift_C(OrbitObject::of(y), 1));
  };
  REQUIRE(ext1({4, 11}, {0, 3}) == 1);
  REQUIRE(ext1({5, 8}, {4, 11}) == 1);
  REQUIRE(ext1({12, 15}, {4, 11}) == 1);
  REQUIRE(ext1({4, 11}, {5, 8}) == 0);
  REQUIRE(C.hom_dim_C(obj({{4, 11}}), obj({{0, 3}})) == 0);
  REQUIRE(C.hom_dim_C(obj({{0, 3}}), obj({{0, 15}})) == 1);

  auto all = C.all_indecomposables();
  for (auto d : all) REQUIRE(C.hom_dim_C(OrbitObject::of(d), OrbitObject::of(d)) >= 1);

  SECTION("negative shifts of the candidate subcategory carry no homs") {
    for (auto s : kRed)
      for (auto t : kRed) {
        REQUIRE(C.hom_dim_C(OrbitObject::of(s), C.shift_C(OrbitObject::of(t), -1)) == 0);
        REQUIRE(C.hom_dim_C(OrbitObject::of(s), C.shift_C(OrbitObject::of(t), -2)) == 0);
      }
  }

  SECTION("Serre duality holds for every pair of indecomposables") {
    for (auto x : all)
      for (auto y : all)
        REQUIRE(C.hom_dim_C(OrbitObject::of(x), OrbitObject::of(y)) ==
                C.hom_dim_C(OrbitObject::of(y), C.serre(OrbitObject::of(x))));
  }

  SECTION("hom dimensions are additive and the scan window has empty ends") {
    std::mt19937 rng(411);
    for (int trial = 0; trial < 20; ++trial) {
      OrbitObject x = random_object(C, rng, 2), x2 = random_object(C, rng, 2);
      OrbitObject y = random_object(C, rng, 2);
      OrbitObject sum = x;
      sum.add(x2);
      REQUIRE(C.hom_dim_C(sum, y) == C.hom_dim_C(x, y) + C.hom_dim_C(x2, y));
      auto [lo, hi] = C.hom_window(x, y);
      REQUIRE(C.hom_layer(x, y, lo) == 0);
      REQUIRE(C.hom_layer(x, y, lo + 1) == 0);
      REQUIRE(C.hom_layer(x, y, hi) == 0);
      REQUIRE(C.hom_layer(x, y, hi - 1) == 0);
    }
  }

  SECTION("pair dimensions are invariant under the orbit autoequivalence") {
    for (auto x : all)
      for (auto y : all) {
        ShiftedInterval sx = C.lift_part(x), sy = C.lift_part(y);
        for (int dk = -1; dk <= 1; ++dk) {
          ShiftedInterval ty = shift_of(sy, dk);
          REQUIRE(hom_dim_D_pair(sx, ty) ==
                  hom_dim_D_pair(C.F(sx, 1), C.F(ty, 1)));
        }
      }
  }
}

TEST_CASE("orbit composition satisfies the category laws") {
  OrbitContext C(3, 4);
  std::mt19937 rng(902);
  for (int trial = 0; trial < 12; ++trial) {
    OrbitMorphism f = random_nonzero(C, rng);
    OrbitMorphism g = random_nonzero(C, rng, &f.dst);
    const OrbitObject &x = f.src, &y = f.dst, &z = g.dst;

    REQUIRE(C.compose(C.identity_mor(y), f).comp == f.comp);
    REQUIRE(C.compose(f, C.identity_mor(x)).comp == f.comp);

    OrbitMorphism round = C.mor_from_vec(x, y, C.mor_to_vec(f));
    REQUIRE(round.comp == f.comp);

    OrbitMorphism h = random_morphism(C, rng, z, random_object(C, rng, 2));
    OrbitMorphism lhs = C.compose(h, C.compose(g, f));
    OrbitMorphism rhs = C.compose(C.compose(h, g), f);
    REQUIRE(lhs.comp == rhs.comp);

    OrbitMorphism sf = C.shift_mor(f, 1);
    OrbitMorphism sg = C.shift_mor(g, 1);
    REQUIRE(C.shift_mor(C.compose(g, f), 1).comp == C.compose(sg, sf).comp);
    REQUIRE(C.shift_mor(sf, -1).comp == f.comp);
  }
}

TEST_CASE("cones of identity and zero morphisms") {
  OrbitContext C(3, 4);
  OrbitObject x = obj({{0, 3}, {4, 11}});
  REQUIRE(C.cone_object_C(C.identity_mor(x)).empty());

  OrbitObject y = obj({{5, 8}});
  OrbitObject cz = C.cone_object_C(C.zero_mor(x, y));
  OrbitObject expect = y;
  expect.add(C.shift_C(x, 1));
  REQUIRE(cz == expect);
}

TEST_CASE("calibrated extension cones") {
  OrbitContext C(3, 4);
  auto middle = [&](Diagonal top, Diagonal bottom) {
    OrbitObject sx = C.shift_C(OrbitObject::of(top), -1);
    auto basis = C.hom_basis_C(sx, OrbitObject::of(bottom));
    REQUIRE(basis.size() == 1);
    return C.cone_object_C(basis.front());
  };
  REQUIRE(middle({4, 11}, {0, 3}) == obj({{0, 11}}));
  REQUIRE(middle({5, 8}, {4, 11}) == obj({{8, 11}}));
  REQUIRE(middle({12, 15}, {4, 11}) == obj({{4, 15}}));

  SECTION("the triangle of the first extension rotates and is hom exact") {
    OrbitObject sx = C.shift_C(obj({{4, 11}}), -1);
    OrbitMorphism f = C.hom_basis_C(sx, obj({{0, 3}})).front();
    OrbitTriangle T = C.cone_C(f);
    REQUIRE(T.cone == obj({{0, 11}}));
    REQUIRE(C.cone_object_C(T.incl) == C.shift_C(sx, 1));
    REQUIRE(C.cone_object_C(T.proj) == C.shift_C(f.dst, 1));
    check_long_exact(C, f, T);
  }
}

TEST_CASE("triangle rotation closes for random morphisms") {
  OrbitContext C(3, 4);
  std::mt19937 rng(1733);
  for (int trial = 0; trial < 8; ++trial) {
    OrbitMorphism f = random_nonzero(C, rng);
    OrbitTriangle T = C.cone_C(f);
    REQUIRE(C.cone_object_C(T.incl) == C.shift_C(f.src, 1));
    REQUIRE(C.cone_object_C(T.proj) == C.shift_C(f.dst, 1));
  }
}

TEST_CASE("long exact hom sequences in the orbit category") {
  OrbitContext C(3, 4);
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    OrbitMorphism f = random_nonzero(C, rng);
    check_long_exact(C, f, C.cone_C(f));
  }
}

TEST_CASE("AR quiver structure") {
  OrbitContext C(3, 4);
  ArQuiver q = C.ar_quiver();
  REQUIRE(q.vertices.size() == 36);
  REQUIRE(q.arrows.size() == 54);

  const std::vector<Diagonal> cycle = {{0, 3},  {4, 7},  {8, 11}, {12, 15}, {1, 16},
                                       {2, 5},  {6, 9},  {10, 13}, {14, 17}};
  for (size_t i = 0; i < cycle.size(); ++i) {
    REQUIRE(C.plane_coords(cycle[i]).second == 1);
    REQUIRE(C.tau_diag(cycle[(i + 1) % cycle.size()]) == cycle[i]);
  }

  std::set<std::pair<Diagonal, Diagonal>> arrow_set(q.arrows.begin(), q.arrows.end());
  for (auto [s, t] : q.arrows) {
    REQUIRE(std::abs(C.plane_coords(s).second - C.plane_coords(t).second) == 1);
    REQUIRE(arrow_set.count({C.tau_diag(s), C.tau_diag(t)}) == 1);
  }
}

TEST_CASE("crossing and shared endpoints") {
  OrbitContext C(3, 4);
  REQUIRE(C.crossing({0, 3}, {1, 4}));
  REQUIRE(C.crossing({0, 11}, {4, 15}));
  REQUIRE_FALSE(C.crossing({0, 3}, {4, 7}));
  REQUIRE_FALSE(C.crossing({0, 3}, {0, 11}));
  REQUIRE(C.share_endpoint({0, 3}, {0, 11}));
  REQUIRE(C.share_endpoint({4, 11}, {8, 11}));
  REQUIRE_FALSE(C.share_endpoint({0, 3}, {4, 7}));
  REQUIRE(C.share_endpoint({5, 8}, {5, 8}));
  REQUIRE_FALSE(C.crossing({5, 8}, {5, 8}));
}

TEST_CASE("the smaller context passes the same structural checks") {
  OrbitContext C(2, 3);
  auto all = C.all_indecomposables();
  REQUIRE(all.size() == 15);
  for (auto d : all) {
    ShiftedInterval s = C.lift_part(d);
    REQUIRE(C.project_part(s) == d);
    REQUIRE(C.twist_index(s) == 0);
    REQUIRE(C.twist_index(C.F(s, 1)) == 1);
  }
  for (auto x : all)
    for (auto y : all)
      REQUIRE(C.hom_dim_C(OrbitObject::of(x), OrbitObject::of(y)) ==
              C.hom_dim_C(OrbitObject::of(y), C.serre(OrbitObject::of(x))));

  std::mt19937 rng(77);
  for (int trial = 0; trial < 4; ++trial) {
    OrbitMorphism f = random_nonzero(C, rng);
    OrbitTriangle T = C.cone_C(f);
    REQUIRE(C.cone_object_C(T.incl) == C.shift_C(f.src, 1));
    REQUIRE(C.cone_object_C(T.proj) == C.shift_C(f.dst, 1));
  }
}
