#include <catch2/catch_amalgamated.hpp>

#include "negcat/fplinalg.hpp"

using namespace negcat;

TEST_CASE("field arithmetic mod small primes") {
  REQUIRE(fp_add(1, 1, 2) == 0);
  REQUIRE(fp_sub(0, 1, 2) == 1);
  REQUIRE(fp_neg(1, 2) == 1);
  REQUIRE(fp_inv(1, 2) == 1);
  REQUIRE(fp_mul(2, 2, 3) == 1);
  REQUIRE(fp_inv(2, 3) == 2);
  REQUIRE(fp_inv(3, 7) == 5);
  for (uint32_t p : {2u, 3u, 5u, 7u, 11u})
    for (uint32_t a = 1; a < p; ++a) REQUIRE(fp_mul(a, fp_inv(a, p), p) == 1);
  REQUIRE_THROWS_AS(fp_inv(0, 5), std::domain_error);
}

TEST_CASE("rank over F_2") {
  // Rows 2 and 3 sum to row 1, so the rank drops to 2.
  FpMatrix m = FpMatrix::from_rows({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}, 3, 2);
  REQUIRE(m.rank() == 2);
  REQUIRE(FpMatrix::identity(4, 2).rank() == 4);
  REQUIRE(FpMatrix(3, 5, 2).rank() == 0);
}

TEST_CASE("rank over F_3 differs from F_2 on the same integer matrix") {
  // det = 3: invertible mod 2, singular mod 3.
  std::vector<FpVec> rows = {{1, 2}, {1, 5}};
  REQUIRE(FpMatrix::from_rows(rows, 2, 2).rank() == 2);
  REQUIRE(FpMatrix::from_rows(rows, 2, 3).rank() == 1);
}

TEST_CASE("rref reports pivot columns") {
  FpMatrix m = FpMatrix::from_rows({{0, 1, 1, 0}, {0, 1, 1, 1}}, 4, 2);
  std::vector<int> pivots;
  FpMatrix r = m.rref(&pivots);
  REQUIRE(pivots == std::vector<int>{1, 3});
  REQUIRE(r.at(0, 1) == 1);
  REQUIRE(r.at(0, 3) == 0);
  REQUIRE(r.at(1, 3) == 1);
}

TEST_CASE("kernel basis spans the kernel and has the right dimension") {
  FpMatrix m = FpMatrix::from_rows({{1, 1, 0}, {0, 0, 0}}, 3, 2);
  auto ker = m.kernel_basis();
  REQUIRE(ker.size() == 2);
  for (const auto& v : ker) REQUIRE(fpvec_is_zero(m.apply(v)));

  FpMatrix sq = FpMatrix::from_rows({{1, 2, 0}, {2, 1, 0}, {0, 0, 0}}, 3, 5);
  auto ker5 = sq.kernel_basis();
  REQUIRE(ker5.size() == 1);
  REQUIRE(fpvec_is_zero(sq.apply(ker5[0])));
}

TEST_CASE("solve finds a preimage exactly when one exists") {
  FpMatrix m = FpMatrix::from_rows({{1, 1}, {0, 1}, {1, 0}}, 2, 2);
  auto x = m.solve({0, 1, 1});
  REQUIRE(x.has_value());
  REQUIRE(m.apply(*x) == FpVec{0, 1, 1});
  REQUIRE_FALSE(m.solve({1, 0, 0}).has_value());

  FpMatrix wide = FpMatrix::from_rows({{1, 1, 1}}, 3, 3);
  auto y = wide.solve({2});
  REQUIRE(y.has_value());
  REQUIRE(wide.apply(*y) == FpVec{2});
}

TEST_CASE("matrix algebra identities") {
  FpMatrix a = FpMatrix::from_rows({{1, 1}, {0, 1}}, 2, 3);
  FpMatrix b = FpMatrix::from_rows({{2, 0}, {1, 1}}, 2, 3);
  REQUIRE((a * b).transpose() == b.transpose() * a.transpose());
  REQUIRE(a + b - b == a);
  REQUIRE(a.scaled(2) + a == FpMatrix(2, 2, 3));
  REQUIRE(a * FpMatrix::identity(2, 3) == a);
  REQUIRE(a.hstack(b).submatrix(0, 2, 2, 2) == b);
  REQUIRE(a.vstack(b).submatrix(2, 0, 2, 2) == b);
}

TEST_CASE("row span absorbs new directions and rejects dependent ones") {
  RowSpan span(3, 2);
  REQUIRE(span.add({1, 1, 0}));
  REQUIRE(span.add({0, 1, 1}));
  REQUIRE_FALSE(span.add({1, 0, 1}));
  REQUIRE(span.dim() == 2);
  REQUIRE(span.contains({1, 0, 1}));
  REQUIRE_FALSE(span.contains({1, 0, 0}));
  REQUIRE(span.add({1, 0, 0}));
  REQUIRE(span.dim() == 3);
  REQUIRE(span.contains({0, 0, 1}));
}
