#include <doctest.h>

#include <random>

#include "kloo/charsum.hpp"
#include "kloo/error.hpp"
#include "oracles.hpp"

using namespace kloo;

namespace {

CharSum random_sum(std::mt19937_64& rng, const Modulus& mod) {
  CharSum s(mod);
  for (u64 j = 0; j < mod.m(); ++j) s.accumulate_raw(j, static_cast<i64>(rng() % 21) - 10);
  return s;
}

std::complex<double> direct(const CharSum& s) {
  std::complex<double> z = 0;
  for (u64 j = 0; j < s.m(); ++j) z += s.coeffs()[j].convert_to<double>() * oracle::e(static_cast<double>(j) / static_cast<double>(s.m()));
  return z;
}

}  // namespace

TEST_CASE("accumulate") {
  Modulus m9(3, 2);
  CharSum s(m9);
  s.accumulate(ZmodPK(0, m9));
  CHECK(s.as_integer() == BigInt(1));
  CHECK(std::abs(s.to_complex() - std::complex<double>(1, 0)) < 1e-15);

  CharSum full(m9);
  for (u64 j = 0; j < 9; ++j) full.accumulate_raw(j);
  CHECK(full.is_zero());

  CharSum twice(m9);
  twice.accumulate(ZmodPK(4, m9), 7);
  twice.accumulate(ZmodPK(4, m9), 7);
  CHECK(twice.coeffs()[4] == 14);
  CHECK_THROWS_AS(s.accumulate(ZmodPK(1, Modulus(3, 1))), Error);
}

TEST_CASE("canonicalize examples") {
  for (auto [p, k] : {std::pair<u64, int>{3, 1}, {3, 2}, {5, 2}, {7, 1}, {2, 3}}) {
    Modulus mod(p, k);
    CharSum phi_rel(mod);
    for (u64 i = 0; i < p; ++i) phi_rel.accumulate_raw(i * (mod.m() / p));
    CHECK(phi_rel.is_zero());
  }
  Modulus m3(3, 1);
  CharSum reduced(m3);
  reduced.accumulate_raw(0, 4);
  reduced.accumulate_raw(1, -2);
  CHECK(reduced.canonical().coeffs() == reduced.coeffs());

  CharSum s(m3);
  s.accumulate_raw(1);
  s.accumulate_raw(2);
  CHECK(s.canonical().coeffs() == std::vector<BigInt>{-1, 0, 0});
}

TEST_CASE("to_complex examples") {
  // K_1(1,1;3): x = 1 gives 2, x = 2 gives 4 = 1
  Modulus m3(3, 1);
  CharSum k(m3);
  for (u64 x = 1; x < 3; ++x) k.accumulate_raw(x + inverse_mod(x, 3));
  CHECK(std::abs(k.to_complex() - std::complex<double>(-1, 0)) < 1e-12);
  CHECK(k.as_integer() == BigInt(-1));
  CHECK(CharSum(m3).to_complex() == std::complex<double>(0, 0));
  CHECK(CharSum::constant(m3, 5).magnitude() == doctest::Approx(5.0));
}

TEST_CASE("canonicalize is idempotent and value preserving") {
  std::mt19937_64 rng(101);
  for (auto [p, k] : {std::pair<u64, int>{2, 1}, {2, 2}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}, {11, 1}, {13, 1}}) {
    Modulus mod(p, k);
    for (int t = 0; t < 200; ++t) {
      CharSum s = random_sum(rng, mod);
      CharSum c = s.canonical();
      REQUIRE(c.canonical().coeffs() == c.coeffs());
      REQUIRE(std::abs(c.to_complex() - s.to_complex()) < 1e-9);
      REQUIRE(std::abs(s.to_complex() - direct(s)) < 1e-9);
      for (u64 j = mod.m() - mod.m() / p; j < mod.m(); ++j) REQUIRE(c.coeffs()[j] == 0);
    }
  }
}

TEST_CASE("linearity and products") {
  std::mt19937_64 rng(103);
  for (auto [p, k] : {std::pair<u64, int>{3, 2}, {5, 1}, {3, 3}, {7, 1}}) {
    Modulus mod(p, k);
    for (int t = 0; t < 100; ++t) {
      CharSum a = random_sum(rng, mod);
      CharSum b = random_sum(rng, mod);
      REQUIRE(std::abs((a + b).to_complex() - (a.to_complex() + b.to_complex())) < 1e-9);
      REQUIRE(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()) < 1e-7);
      REQUIRE(std::abs(a.conj().to_complex() - std::conj(a.to_complex())) < 1e-9);
      u64 shift = rng() % mod.m();
      REQUIRE(std::abs(a.rotated(shift).to_complex() - a.to_complex() * oracle::e(static_cast<double>(shift) / mod.m())) < 1e-9);
      REQUIRE(std::abs(a.lifted(k + 1).to_complex() - a.to_complex()) < 1e-9);
      REQUIRE(a.same_value(a.canonical()));
      REQUIRE((a - a).is_zero());
      CharSum n2 = a.norm_squared();
      REQUIRE(std::abs(n2.to_complex().real() - std::norm(a.to_complex())) < 1e-6);
    }
  }
}

TEST_CASE("full sum vanishes") {
  for (auto [p, k] : {std::pair<u64, int>{2, 5}, {3, 4}, {5, 3}, {7, 2}, {11, 1}}) {
    Modulus mod(p, k);
    CharSum s(mod);
    for (u64 j = 0; j < mod.m(); ++j) s.accumulate_raw(j, 3);
    CHECK(s.is_zero());
  }
}

TEST_CASE("exact division") {
  Modulus m9(3, 2);
  CharSum s(m9);
  s.accumulate_raw(2, 27);
  s.accumulate_raw(5, -9);
  auto d = s.divided_exact(9);
  CHECK(d.coeffs()[2] == 3);
  CHECK(d.coeffs()[5] == -1);
  try {
    (void)s.divided_exact(27);
    FAIL("expected InexactDivision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InexactDivision);
  }
}

TEST_CASE("gauss constant") {
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    auto g = gauss_constant(p);
    std::complex<double> z = 0;
    for (u64 u = 0; u < p; ++u) z += oracle::e(static_cast<double>(u * u % p) / p);
    CHECK(std::abs(g.value() - z) < 1e-12);
    CHECK(std::abs(g.exact.to_complex() - z) < 1e-12);
    // g^2 = (-1/p) p
    CHECK((g.exact * g.exact).as_integer() == BigInt(p % 4 == 1 ? static_cast<i64>(p) : -static_cast<i64>(p)));
  }
  CHECK(gauss_constant(5).i_power == 0);
  CHECK(gauss_constant(3).i_power == 1);
  CHECK(gauss_constant(7).i_power == 1);
  CHECK_THROWS_AS(gauss_constant(2), Error);
}

TEST_CASE("magnitude comparisons") {
  auto g5 = gauss_constant(5).exact;
  CHECK(magnitude_at_most(g5, 1, 5, Rational(1, 2)));
  CHECK_FALSE(magnitude_at_most(g5, 1, 5, Rational(1, 4)));
  Modulus m5(5, 1);
  CharSum s(m5);
  s.accumulate_raw(0);
  s.accumulate_raw(1);  // |1 + e(1/5)|^2 = 2 + 2cos(2pi/5), irrational
  CHECK_FALSE(s.norm_squared().as_integer().has_value());
  CHECK(magnitude_at_most(s, 2, 5, Rational(0)));
  CHECK(magnitude_at_most(s, 1, 5, Rational(1, 2)));
  CHECK_FALSE(magnitude_at_most(s, 1, 5, Rational(0)));
  CHECK(integer_at_most(2, 1, 3, Rational(1, 2)) == false);
  CHECK(integer_at_most(5, 1, 3, Rational(3, 2)));
  CHECK(integer_at_most(6, 4, 3, Rational(-1, 2)) == false);
  CHECK(integer_at_most(14, Rational(5, 4), 3, Rational(2)) == false);
  CHECK(integer_at_most(11, Rational(5, 4), 3, Rational(2)));
  CHECK(integer_at_most(2, 4, 3, Rational(-1, 2)));
}

TEST_CASE("json rendering") {
  Modulus m3(3, 1);
  CharSum s(m3);
  s.accumulate_raw(1);
  s.accumulate_raw(2);
  auto j = s.to_json();
  CHECK(j["re"].get<double>() == doctest::Approx(-1.0));
  CHECK(j["abs"].get<double>() == doctest::Approx(1.0));
  CHECK(j["exact_coeffs"].size() == 1);
  CHECK(j["exact_coeffs"][0] == "-1");
  CHECK_FALSE(s.to_json(false).contains("exact_coeffs"));
}
