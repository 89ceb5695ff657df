#include <doctest.h>

#include <algorithm>
#include <random>

#include "kloo/mod_matrix.hpp"
#include "kloo/primary.hpp"
#include "oracles.hpp"

using namespace kloo;

namespace {

ModMatrix from_oracle(const oracle::Mat& m, const Modulus& mod, int n) {
  return ModMatrix::from_entries(mod, static_cast<size_t>(n), std::vector<i64>(m.begin(), m.end()));
}

ModMatrix random_unit(std::mt19937_64& rng, const Modulus& mod, int n) {
  while (true) {
    auto x = from_oracle(oracle::random_matrix(rng, n, static_cast<i64>(mod.m())), mod, n);
    if (mod.is_unit(det(x))) return x;
  }
}

}  // namespace

TEST_CASE("basic matrix operations") {
  Modulus m9(3, 2);
  auto a = ModMatrix::parse("1,2;3,4", m9);
  auto id = ModMatrix::identity(m9, 2);
  CHECK(id * a == a);
  CHECK(ModMatrix::identity(m9, 3).trace() == 3);
  CHECK(ModMatrix::parse("-1,0;0,10", m9).to_text() == "8,0;0,1");
  CHECK_THROWS_AS(ModMatrix::parse("1,2;3", m9), Error);
  CHECK_THROWS_AS(a * ModMatrix::identity(m9, 3), Error);
  CHECK_THROWS_AS(a + ModMatrix::identity(Modulus(3, 1), 2), Error);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto x = from_oracle(oracle::random_matrix(rng, 3, 27), Modulus(3, 3), 3);
    auto y = from_oracle(oracle::random_matrix(rng, 3, 27), Modulus(3, 3), 3);
    REQUIRE((x * y).trace() == (y * x).trace());
  }
}

TEST_CASE("inverse") {
  Modulus m9(3, 2);
  CHECK(mat_inverse(ModMatrix::identity(m9, 2)) == ModMatrix::identity(m9, 2));
  CHECK(mat_inverse(ModMatrix::parse("2,0;0,1", m9)) == ModMatrix::parse("5,0;0,1", m9));
  try {
    (void)mat_inverse(ModMatrix::parse("0,1;0,0", Modulus(3, 1)));
    FAIL("expected NotInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvertible);
  }
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    auto x = random_unit(rng, Modulus(5, 3), 3);
    REQUIRE(x * mat_inverse(x) == ModMatrix::identity(Modulus(5, 3), 3));
  }
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937_64 rng(9);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 100; ++t) {
      auto o = oracle::random_matrix(rng, n, 25);
      REQUIRE(det(from_oracle(o, Modulus(5, 2), n)) == static_cast<u64>(oracle::det(o, n, 25)));
    }
  }
}

TEST_CASE("rank and stable rank") {
  Modulus m3(3, 1);
  auto nil = ModMatrix::parse("0,1;0,0", m3);
  CHECK(rank_mod_p(nil) == 1);
  CHECK(stable_rank(nil) == 0);
  CHECK(rank_mod_p(ModMatrix::identity(m3, 3)) == 3);
  CHECK(stable_rank(ModMatrix::identity(m3, 3)) == 3);
  auto d = ModMatrix::parse("1,0,0;0,0,0;0,0,3", Modulus(3, 2));
  CHECK(rank_mod_p(d) == 1);
  CHECK(stable_rank(d) == 1);
}

TEST_CASE("smith form") {
  Modulus m9(3, 2);
  CHECK(smith_form(ModMatrix::identity(m9, 3)).exponents == std::vector<int>{0, 0, 0});
  CHECK(smith_form(ModMatrix::parse("3,0;0,1", m9)).exponents == std::vector<int>{0, 1});
  CHECK(smith_form(ModMatrix::parse("3,3;3,3", m9)).exponents == std::vector<int>{1, 2});
  CHECK(truncate(SmithForm{{0, 1, 2}}, 1).exponents == std::vector<int>{0, 1, 1});
}

TEST_CASE("smith form is invariant under unit multiplication") {
  std::mt19937_64 rng(17);
  for (auto [p, k, n] : {std::tuple<u64, int, int>{3, 2, 2}, {3, 3, 3}, {2, 3, 3}, {5, 2, 2}}) {
    Modulus mod(p, k);
    for (int t = 0; t < 1000; ++t) {
      auto m = from_oracle(oracle::random_matrix(rng, n, static_cast<i64>(mod.m())), mod, n);
      if (t % 3 == 0) m = m.scaled(static_cast<i64>(p));
      auto u = random_unit(rng, mod, n);
      auto v = random_unit(rng, mod, n);
      REQUIRE(smith_form(u * m * v) == smith_form(m));
    }
  }
}

TEST_CASE("rank from smith exponents when k = 1") {
  std::mt19937_64 rng(23);
  Modulus mod(3, 1);
  for (int t = 0; t < 500; ++t) {
    auto o = oracle::random_matrix(rng, 3, 3);
    auto m = from_oracle(o, mod, 3);
    auto s = smith_form(m);
    size_t nonunit = static_cast<size_t>(std::count_if(s.exponents.begin(), s.exponents.end(), [](int e) { return e >= 1; }));
    REQUIRE(rank_mod_p(m) == 3 - nonunit);
    REQUIRE(rank_mod_p(m) == static_cast<size_t>(oracle::rank_mod(o, 3, 3, 3)));
  }
}

TEST_CASE("minimal polynomial") {
  Modulus m3(3, 1);
  CHECK(min_poly(ModMatrix::parse("0,1;0,0", m3)) == FpPoly(3, {0, 0, 1}));
  CHECK(min_poly(ModMatrix::identity(m3, 3)) == FpPoly::linear(3, 1));
  CHECK(min_poly(ModMatrix::parse("0,1;2,0", m3)) == FpPoly(3, {1, 0, 1}));
  CHECK_THROWS_AS(min_poly(ModMatrix::identity(Modulus(3, 2), 2)), Error);
}

TEST_CASE("minimal polynomial annihilates and is minimal") {
  std::mt19937_64 rng(31);
  for (std::uint32_t p : {2U, 3U, 5U}) {
    Modulus mod(p, 1);
    for (int t = 0; t < 150; ++t) {
      int n = 2 + t % 3;
      auto m = from_oracle(oracle::random_matrix(rng, n, p), mod, n);
      if (t % 4 == 0) m = m * m * m;
      FpPoly mp = min_poly(m);
      REQUIRE(mp.is_monic());
      REQUIRE(eval_poly(mp, m.to_fp()).is_zero());
      for (int d = 0; d < mp.degree(); ++d) {
        for (const auto& g : oracle::all_monic(p, d)) {
          if (!(mp % g).is_zero()) continue;
          REQUIRE_FALSE(eval_poly(g, m.to_fp()).is_zero());
        }
      }
      // agrees with the flattened-powers dependency search
      auto c = min_poly_coeffs(m.to_fp());
      REQUIRE(FpPoly(p, c) == mp);
    }
  }
}

TEST_CASE("primary decomposition examples") {
  Modulus m3(3, 1);
  auto pd = primary_decomposition(ModMatrix::parse("1,0;0,0", m3));
  REQUIRE(pd.components.size() == 2);
  CHECK(pd.components[0].f == FpPoly::x(3));
  CHECK(pd.components[0].dim() == 1);
  CHECK(pd.components[1].f == FpPoly::linear(3, 1));
  CHECK(pd.components[1].dim() == 1);
  CHECK(pd.components[1].symbol == 1);

  auto nil = primary_decomposition(ModMatrix::parse("0,1;0,0", m3));
  REQUIRE(nil.components.size() == 1);
  CHECK(nil.components[0].nilpotent());
  CHECK(nil.components[0].symbol == 0);
  CHECK(nil.components[0].jordan.lambda == Partition{2});

  auto c = primary_decomposition(ModMatrix::parse("0,1;2,0", m3));
  REQUIRE(c.components.size() == 1);
  CHECK(c.components[0].f == FpPoly::linear(3, 2));
  CHECK(c.components[0].symbol == -1);
  CHECK(c.components[0].jordan.lambda == (Partition{1, 1}));

  auto zero = primary_decomposition(ModMatrix(m3, 3));
  CHECK(zero.components[0].jordan.lambda == (Partition{1, 1, 1}));
}

TEST_CASE("primary decomposition invariants") {
  std::mt19937_64 rng(41);
  for (std::uint32_t p : {3U, 5U, 7U}) {
    Modulus mod(p, 1);
    for (int t = 0; t < 200; ++t) {
      int n = 1 + t % 4;
      auto c = from_oracle(oracle::random_matrix(rng, n, p), mod, n);
      if (t % 5 == 0) c = c * c;
      auto pd = primary_decomposition(c);
      int total = 0;
      for (const auto& comp : pd.components) {
        total += comp.dim();
        REQUIRE(comp.jordan.lambda.size() * comp.jordan.field_degree == comp.dim());
        REQUIRE(dual(dual(comp.jordan.lambda)) == comp.jordan.lambda);
        REQUIRE((comp.symbol == 0) == comp.nilpotent());
        auto sq = comp.restricted * comp.restricted;
        REQUIRE(min_poly(sq) == pow(comp.f, static_cast<std::uint64_t>(comp.multiplicity)));
        // basis * restricted = C * basis
        auto cb = c.to_fp() * comp.basis;
        auto br = comp.basis * comp.restricted.to_fp();
        REQUIRE(cb == br);
      }
      REQUIRE(total == n);
      REQUIRE(rank(pd.change_of_basis) == static_cast<size_t>(n));
    }
  }
}
