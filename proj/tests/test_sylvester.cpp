#include <doctest.h>

#include <algorithm>
#include <random>

#include "kloo/counting.hpp"
#include "kloo/sylvester.hpp"
#include "oracles.hpp"

using namespace kloo;

namespace {

ModMatrix mat(const oracle::Mat& m, const Modulus& mod, int n) {
  return ModMatrix::from_entries(mod, static_cast<size_t>(n), std::vector<i64>(m.begin(), m.end()));
}

/// dim {Y : CY + YC = 0} via an independently assembled system.
size_t oracle_kernel(const oracle::Mat& c, int n, std::int64_t p) {
  oracle::Mat sys(n * n * n * n, 0);
  for (int col = 0; col < n * n; ++col) {
    oracle::Mat y(n * n, 0);
    y[col] = 1;
    auto img = oracle::add(oracle::mul(c, y, n, p), oracle::mul(y, c, n, p), p);
    for (int row = 0; row < n * n; ++row) sys[row * n * n + col] = img[row];
  }
  return static_cast<size_t>(n * n - oracle::rank_mod(sys, n * n, n * n, p));
}

bool squarefree_min_poly(const ModMatrix& c) {
  for (const auto& f : poly_factor(min_poly(c))) {
    if (f.multiplicity > 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sylvester solve examples") {
  Modulus m5(5, 1);
  auto id = ModMatrix::identity(m5, 2);
  auto m = ModMatrix::parse("1,2;3,4", m5);
  auto sol = sylvester_solve(id, id, m.scaled(2), SylvesterSign::Plus);
  REQUIRE(sol.particular.has_value());
  CHECK(*sol.particular == m.to_fp());
  CHECK(sol.kernel_dim() == 0);
  auto d = ModMatrix::parse("1,0;0,-1", m5);
  CHECK(sylvester_solve(d, d, ModMatrix(m5, 2), SylvesterSign::Plus).kernel_dim() == 2);
  // AY - YA = S is inconsistent when Tr S != 0
  auto bad = sylvester_solve(m, m, ModMatrix::identity(m5, 2), SylvesterSign::Minus);
  CHECK_FALSE(bad.particular.has_value());
}

TEST_CASE("spectral kernel dimension examples") {
  Modulus m5(5, 1);
  CHECK(kernel_dim_by_spectrum(ModMatrix::identity(m5, 3)) == 0);
  CHECK(kernel_dim_by_spectrum(ModMatrix::parse("1,0;0,-1", m5)) == 2);
  CHECK(kernel_dim_by_spectrum(ModMatrix(m5, 3)) == 9);
  CHECK(kernel_dim_eigen_pairing(ModMatrix(m5, 3)) == 9);
  // nilpotent Jordan block: the eigenvector pairing sees 1, the kernel is 2-dimensional
  auto j = ModMatrix::parse("0,1;0,0", m5);
  CHECK(kernel_dim_direct(j) == 2);
  CHECK(kernel_dim_by_spectrum(j) == 2);
  CHECK(kernel_dim_eigen_pairing(j) == 1);
  CHECK_THROWS_AS(kernel_dim_by_spectrum(ModMatrix::identity(Modulus(2, 1), 2)), Error);
}

TEST_CASE("spectral kernel dimension exhaustive over M_2(F_3)") {
  Modulus m3(3, 1);
  int semisimple = 0;
  oracle::for_each_matrix(2, 3, [&](const oracle::Mat& o) {
    auto c = mat(o, m3, 2);
    size_t direct = kernel_dim_direct(c);
    REQUIRE(direct == oracle_kernel(o, 2, 3));
    REQUIRE(kernel_dim_by_spectrum(c) == direct);
    if (squarefree_min_poly(c)) {
      ++semisimple;
      REQUIRE(kernel_dim_eigen_pairing(c) == direct);
    }
  });
  CHECK(semisimple > 0);
}

TEST_CASE("spectral kernel dimension on random M_3(F_5)") {
  std::mt19937_64 rng(2024);
  Modulus m5(5, 1);
  for (int t = 0; t < 1000; ++t) {
    auto o = oracle::random_matrix(rng, 3, 5);
    if (t % 4 == 1) o = oracle::mul(o, o, 3, 5);
    if (t % 4 == 2) {
      // force a +/- eigenvalue pair
      o = {1, static_cast<std::int64_t>(rng() % 5), 0, 0, 4, static_cast<std::int64_t>(rng() % 5), 0, 0, static_cast<std::int64_t>(rng() % 5)};
    }
    auto c = mat(o, m5, 3);
    REQUIRE(kernel_dim_by_spectrum(c) == kernel_dim_direct(c));
    REQUIRE(kernel_dim_direct(c) == oracle_kernel(o, 3, 5));
  }
}

TEST_CASE("lifting examples") {
  Modulus m9(3, 2);
  auto id9 = ModMatrix::identity(m9, 2);
  auto fiber = lift_fiber(id9, id9, ModMatrix::identity(Modulus(3, 1), 2));
  CHECK(fiber.solvable);
  CHECK(fiber.kernel_dim == 0);
  REQUIRE(fiber.lifts.size() == 1);
  CHECK(fiber.lifts[0] == id9);
  CHECK(lift_solutions(id9, id9, {}).empty());
  CHECK_THROWS_AS(lift_fiber(id9, id9, ModMatrix::parse("0,1;1,1", Modulus(3, 1))), Error);
}

TEST_CASE("lifted solutions equal the brute-force set") {
  std::mt19937_64 rng(77);
  Modulus m3(3, 1);
  Modulus m9(3, 2);
  int nonempty = 0;
  oracle::for_each_matrix(2, 3, [&](const oracle::Mat& o) {
    auto a = mat(o, m3, 2).lifted(2) + mat(oracle::random_matrix(rng, 2, 3), m9, 2).scaled(3);
    ModMatrix x(m9, 2);
    do {
      x = mat(oracle::random_matrix(rng, 2, 9), m9, 2);
    } while (!m9.is_unit(det(x)));
    auto b = (rng() % 4 == 0) ? mat(oracle::random_matrix(rng, 2, 9), m9, 2) : x * a * x;
    auto lifted = lift_solutions(a, b, solutions_brute(a.reduced(1), b.reduced(1)));
    auto brute = solutions_brute(a, b);
    auto key = [](const ModMatrix& m) { return m.entries(); };
    std::vector<std::vector<u64>> ls, bs;
    for (const auto& y : lifted) ls.push_back(key(y));
    for (const auto& y : brute) bs.push_back(key(y));
    std::sort(ls.begin(), ls.end());
    std::sort(bs.begin(), bs.end());
    REQUIRE(ls == bs);
    if (!bs.empty()) ++nonempty;
  });
  CHECK(nonempty > 40);
}

TEST_CASE("fiber lift count can exceed the rank envelope for nilpotent C") {
  Modulus m9(3, 2);
  auto j = ModMatrix::parse("0,1;0,0", m9);
  auto fiber = lift_fiber(j, j, ModMatrix::identity(Modulus(3, 1), 2));
  REQUIRE(fiber.solvable);
  CHECK(fiber.kernel_dim == 2);
  CHECK(fiber.lifts.size() == 9);
  auto env = fiber_envelope(j.reduced(1));
  CHECK(env.exponent == 1);
  CHECK_FALSE(env.holds_for(BigInt(fiber.lifts.size())));
}
