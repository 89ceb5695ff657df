#include <doctest.h>

#include <random>
#include <set>

#include "kloo/fppoly.hpp"
#include "kloo/fq.hpp"
#include "kloo/modring.hpp"
#include "oracles.hpp"

using namespace kloo;

TEST_CASE("zmod arithmetic") {
  Modulus m9(3, 2);
  CHECK((ZmodPK(7, m9) * ZmodPK(8, m9)).value() == 2);
  CHECK((ZmodPK(4, m9) + ZmodPK(4, m9)).value() == 8);
  CHECK((ZmodPK(5, m9) + ZmodPK(0, m9)).value() == 5);
  CHECK(ZmodPK(-1, m9).value() == 8);
  CHECK_THROWS_AS(ZmodPK(1, m9) + ZmodPK(1, Modulus(3, 1)), Error);
}

TEST_CASE("zmod inverse") {
  Modulus m9(3, 2);
  CHECK(ZmodPK(2, m9).inverse().value() == 5);
  CHECK(ZmodPK(1, m9).inverse().value() == 1);
  try {
    (void)ZmodPK(3, m9).inverse();
    FAIL("expected NotAUnit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAUnit);
  }
}

TEST_CASE("inverse property exhaustive up to 3^6") {
  for (auto [p, kmax] : {std::pair<u64, int>{2, 9}, {3, 6}, {5, 4}, {7, 3}}) {
    for (int k = 1; k <= kmax; ++k) {
      Modulus mod(p, k);
      for (u64 a = 0; a < mod.m(); ++a) {
        if (!mod.is_unit(a)) continue;
        ZmodPK x(static_cast<i64>(a), mod);
        REQUIRE((x * x.inverse()).value() == 1);
      }
    }
  }
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(Modulus(4, 1), Error);
  CHECK_THROWS_AS(Modulus(3, 0), Error);
  CHECK_THROWS_AS(Modulus(3, 40), Error);
  CHECK(checked_pow(3, 4) == 81);
  CHECK_THROWS_AS(checked_pow(10, 30), Error);
}

TEST_CASE("poly factor examples") {
  FpPoly x2m1(3, {2, 0, 1});
  auto f = poly_factor(x2m1);
  REQUIRE(f.size() == 2);
  CHECK(((f[0].factor == FpPoly::linear(3, 1) && f[1].factor == FpPoly::linear(3, -1)) ||
         (f[1].factor == FpPoly::linear(3, 1) && f[0].factor == FpPoly::linear(3, -1))));
  CHECK(f[0].multiplicity == 1);
  CHECK(f[1].multiplicity == 1);
  auto g = poly_factor(FpPoly(3, {0, 0, 1}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].factor == FpPoly::x(3));
  CHECK(g[0].multiplicity == 2);
  auto h = poly_factor(FpPoly(3, {1, 0, 1}));
  REQUIRE(h.size() == 1);
  CHECK(h[0].multiplicity == 1);
  CHECK(oracle::has_no_root(FpPoly(3, {1, 0, 1})));
}

TEST_CASE("poly factor round trip exhaustive") {
  for (std::uint32_t p : {2U, 3U, 5U}) {
    for (int d = 1; d <= 4; ++d) {
      for (const auto& m : oracle::all_monic(p, d)) {
        auto factors = poly_factor(m);
        FpPoly prod = FpPoly::constant(p, 1);
        std::set<std::vector<std::uint32_t>> seen;
        for (const auto& [f, e] : factors) {
          REQUIRE(oracle::irreducible_by_exhaustion(f));
          REQUIRE(seen.insert(f.coeffs()).second);
          prod = prod * pow(f, static_cast<std::uint64_t>(e));
        }
        REQUIRE(prod == m);
      }
    }
  }
}

TEST_CASE("irreducible sieve agrees with exhaustive divisor search") {
  for (std::uint32_t p : {2U, 3U, 5U}) {
    for (int d = 1; d <= 4; ++d) {
      size_t count = 0;
      for (const auto& m : oracle::all_monic(p, d)) count += oracle::irreducible_by_exhaustion(m) ? 1 : 0;
      CHECK(monic_irreducibles(p, d).size() == count);
    }
  }
}

TEST_CASE("residue symbol examples") {
  FpPoly x = FpPoly::x(3);
  CHECK(residue_symbol(x, FpPoly(3, {1, 0, 1})) == 1);
  CHECK(residue_symbol(x, FpPoly(3, {2, 1, 1})) == -1);
  CHECK(residue_symbol(x, x) == 0);
  CHECK(powmod(x, 4, FpPoly(3, {1, 0, 1})).is_one());
  CHECK(powmod(x, 4, FpPoly(3, {2, 1, 1})) == FpPoly::constant(3, 2));
  try {
    (void)residue_symbol(FpPoly::x(2), FpPoly(2, {1, 1, 1}));
    FAIL("expected EvenCharacteristic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvenCharacteristic);
  }
}

TEST_CASE("residue symbol is multiplicative") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {3U, 5U, 7U}) {
    for (int d = 1; d <= 2; ++d) {
      const FpPoly& f = monic_irreducibles(p, d).back();
      for (int t = 0; t < 1000; ++t) {
        FpPoly g1 = oracle::random_poly(rng, p, d - 1);
        FpPoly g2 = oracle::random_poly(rng, p, d - 1);
        REQUIRE(residue_symbol(g1 * g2, f) == residue_symbol(g1, f) * residue_symbol(g2, f));
      }
    }
  }
}

TEST_CASE("half of F_q* are squares") {
  for (auto [p, d] : {std::pair<std::uint32_t, int>{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2}, {11, 1}}) {
    const FpPoly& f = monic_irreducibles(p, d).front();
    u64 q = checked_pow(p, static_cast<unsigned>(d));
    u64 plus = 0;
    std::set<std::vector<std::uint32_t>> squares;
    for (const auto& g : oracle::all_polys_below(p, d)) {
      if (g.is_zero()) continue;
      if (residue_symbol(g, f) == 1) ++plus;
      squares.insert(((g * g) % f).coeffs());
    }
    CHECK(plus == (q - 1) / 2);
    CHECK(squares.size() == (q - 1) / 2);
  }
}

TEST_CASE("fq arithmetic") {
  auto f9 = FqField::make(FpPoly(3, {1, 0, 1}));
  auto x = FqElem::generator(f9);
  CHECK(x * x == FqElem::from_int(f9, 2));
  CHECK(x.pow(8) == FqElem::one(f9));
  CHECK(x.pow(0) == FqElem::one(f9));
  CHECK(x * x.inverse() == FqElem::one(f9));
  CHECK_THROWS_AS(FqElem::zero(f9).inverse(), Error);
  auto other = FqField::make(FpPoly(3, {2, 1, 1}));
  CHECK_THROWS_AS(x + FqElem::generator(other), Error);
  CHECK_THROWS_AS(FqField::make(FpPoly(3, {2, 0, 1})), Error);
}
