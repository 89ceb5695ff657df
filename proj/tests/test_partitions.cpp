#include <doctest.h>

#include <map>

#include "kloo/error.hpp"
#include "kloo/partitions.hpp"
#include "oracles.hpp"

using namespace kloo;

TEST_CASE("dual") {
  CHECK(dual(Partition{4, 3, 1}) == (Partition{3, 2, 2, 1}));
  CHECK(dual(Partition{5}) == (Partition{1, 1, 1, 1, 1}));
  CHECK(dual(Partition{1, 1, 1}) == Partition{3});
  for (int n = 0; n <= 8; ++n) {
    for (const auto& l : partitions_of(n)) {
      REQUIRE(dual(dual(l)) == l);
      REQUIRE(dual(l).size() == n);
      REQUIRE(Partition::from_dual(dual(l).parts()) == l);
    }
  }
}

TEST_CASE("join") {
  CHECK(join(Partition{2}, Partition{1}) == (Partition{2, 1}));
  CHECK(join(Partition{3, 1}, Partition{}) == (Partition{3, 1}));
  CHECK(join(Partition{2, 1}, Partition{2}) == (Partition{2, 2, 1}));
}

TEST_CASE("decompositions") {
  auto collect = [](const Partition& l) {
    std::vector<std::pair<Partition, Partition>> out;
    for_each_decomposition(l, [&](const Partition& mu, const Partition& nu) { out.emplace_back(mu, nu); });
    return out;
  };
  auto one = collect(Partition{1});
  CHECK(one.size() == 2);
  CHECK(collect(Partition{1, 1}).size() == 3);
  CHECK(collect(Partition{2, 1}).size() == 4);
  CHECK(collect(Partition{}).size() == 1);
  for (const auto& l : partitions_of(7)) {
    size_t expected = 1;
    for (int r : l.multiplicities()) expected *= static_cast<size_t>(r + 1);
    auto all = collect(l);
    REQUIRE(all.size() == expected);
    for (const auto& [mu, nu] : all) REQUIRE(join(mu, nu) == l);
  }
}

TEST_CASE("partition counts") {
  std::vector<size_t> p{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n) CHECK(partitions_of(n).size() == p[n]);
  CHECK_THROWS_AS(Partition({1, 0}), Error);
}

TEST_CASE("centralizer order examples") {
  CHECK(centralizer_order(Partition{1, 1}, 3) == 48);
  CHECK(centralizer_order(Partition{2}, 3) == 6);
  for (int n = 1; n <= 6; ++n) {
    for (int q : {2, 3, 4, 5}) {
      CHECK(centralizer_order(Partition{n}, q) == big_pow(q, n - 1) * (q - 1));
    }
  }
  CHECK(centralizer_order(Partition{6, 5, 4, 3, 2, 1}, 5) > BigInt(~std::uint64_t{0}));
}

TEST_CASE("phi") {
  CHECK(phi(Partition{1}, 7) == Rational(6, 7));
  CHECK(phi(Partition{1, 1}, 3) == Rational(16, 27));
  CHECK(phi(Partition{2, 1}, 5) == Rational(16, 25));
  for (int n = 1; n <= 5; ++n) {
    for (const auto& l : partitions_of(n)) {
      BigInt s = 0;
      const Partition d_l = dual(l);
      for (int d : d_l.parts()) s += d * d;
      Rational lhs = Rational(big_pow(3, static_cast<std::uint64_t>(s))) * phi(l, 3);
      REQUIRE(lhs == Rational(centralizer_order(l, 3)));
    }
  }
}

TEST_CASE("centralizer divides group order") {
  for (int n = 1; n <= 5; ++n) {
    for (int q : {2, 3, 4, 5}) {
      for (const auto& l : partitions_of(n)) REQUIRE(gl_order(n, q) % centralizer_order(l, q) == 0);
    }
  }
}

TEST_CASE("centralizer agrees with brute force") {
  for (int n = 1; n <= 3; ++n) {
    for (int q : {2, 3}) {
      for (const auto& l : partitions_of(n)) {
        auto nm = oracle::jordan_nilpotent(l.parts());
        REQUIRE(centralizer_order(l, q) == oracle::centralizer_count(nm, n, q));
      }
    }
  }
}

TEST_CASE("nilpotent class mass") {
  for (int n = 1; n <= 4; ++n) {
    for (int q : {2, 3}) {
      BigInt total = 0;
      for (const auto& l : partitions_of(n)) total += gl_order(n, q) / centralizer_order(l, q);
      REQUIRE(total == big_pow(q, static_cast<std::uint64_t>(n * n - n)));
    }
  }
}
