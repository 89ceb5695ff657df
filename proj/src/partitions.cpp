#include "kloo/partitions.hpp"

#include <algorithm>

#include "kloo/error.hpp"

namespace kloo {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int x : parts_) {
    if (x <= 0) throw Error(ErrorCode::InvalidArgument, "partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
  mult_.assign(static_cast<size_t>(largest()) + 1, 0);
  for (int x : parts_) ++mult_[static_cast<size_t>(x)];
}

Partition Partition::from_multiplicities(const std::vector<int>& mult) {
  std::vector<int> parts;
  for (size_t i = 1; i < mult.size(); ++i) {
    for (int t = 0; t < mult[i]; ++t) parts.push_back(static_cast<int>(i));
  }
  return Partition(std::move(parts));
}

Partition Partition::from_dual(const std::vector<int>& dual_parts) {
  for (size_t i = 1; i < dual_parts.size(); ++i) {
    if (dual_parts[i] > dual_parts[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "dual sequence must be weakly decreasing");
    }
  }
  std::vector<int> d;
  for (int x : dual_parts) {
    if (x > 0) d.push_back(x);
  }
  return dual(Partition(d));
}

int Partition::size() const {
  int s = 0;
  for (int x : parts_) s += x;
  return s;
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(parts_[i]);
  }
  return s + "]";
}

Partition dual(const Partition& lambda) {
  std::vector<int> d;
  for (int i = 1; i <= lambda.largest(); ++i) {
    int di = 0;
    for (int j = i; j <= lambda.largest(); ++j) di += lambda.multiplicity(j);
    d.push_back(di);
  }
  return Partition(std::move(d));
}

Partition join(const Partition& mu, const Partition& nu) {
  std::vector<int> parts = mu.parts();
  parts.insert(parts.end(), nu.parts().begin(), nu.parts().end());
  return Partition(std::move(parts));
}

void for_each_decomposition(const Partition& lambda,
                            const std::function<void(const Partition&, const Partition&)>& visit) {
  const auto& r = lambda.multiplicities();
  std::vector<int> choice(r.size(), 0);
  while (true) {
    std::vector<int> rest(r.size(), 0);
    for (size_t i = 0; i < r.size(); ++i) rest[i] = r[i] - choice[i];
    visit(Partition::from_multiplicities(choice), Partition::from_multiplicities(rest));
    size_t i = 1;
    while (i < r.size() && choice[i] == r[i]) {
      choice[i] = 0;
      ++i;
    }
    if (i >= r.size()) break;
    ++choice[i];
  }
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int x = std::min(remaining, max_part); x >= 1; --x) {
      cur.push_back(x);
      rec(remaining - x, x);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

BigInt centralizer_order(const Partition& lambda, const BigInt& q) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "q must be at least 2");
  Partition d = dual(lambda);
  BigInt result = 1;
  long long exponent = 0;
  for (int j = 1; j <= lambda.largest(); ++j) {
    int rj = lambda.multiplicity(j);
    int dj = d.parts()[static_cast<size_t>(j - 1)];
    exponent += static_cast<long long>(dj) * dj - static_cast<long long>(rj) * rj;
    BigInt qr = big_pow(q, static_cast<std::uint64_t>(rj));
    for (int i = 0; i < rj; ++i) result *= qr - big_pow(q, static_cast<std::uint64_t>(i));
  }
  return result * big_pow(q, static_cast<std::uint64_t>(exponent));
}

Rational phi(const Partition& lambda, const BigInt& q) {
  Rational r = 1;
  for (int j = 1; j <= lambda.largest(); ++j) {
    for (int t = 1; t <= lambda.multiplicity(j); ++t) r *= Rational(1) - Rational(BigInt(1), big_pow(q, t));
  }
  return r;
}

BigInt gl_order(int n, const BigInt& q) {
  BigInt r = 1;
  BigInt qn = big_pow(q, static_cast<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) r *= qn - big_pow(q, static_cast<std::uint64_t>(i));
  return r;
}

}  // namespace kloo
