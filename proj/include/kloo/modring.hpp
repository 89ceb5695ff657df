#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "kloo/error.hpp"

namespace kloo {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Largest modulus p^k accepted by the ring types. Products of two residues fit in 64 bits.
inline constexpr u64 kMaxModulus = u64{1} << 31;

bool is_prime(u64 n);

/// Exact integer power; throws TooLarge if the result would exceed `limit`.
u64 checked_pow(u64 base, unsigned exp, u64 limit = ~u64{0});

/// Multiplicity of the prime p in x; returns `cap` for x == 0.
int valuation(u64 x, u64 p, int cap);

/// Inverse of a mod m, throwing NotAUnit when gcd(a, m) != 1.
u64 inverse_mod(u64 a, u64 m);

/// Descriptor of the ring Z/p^kZ.
class Modulus {
 public:
  Modulus(u64 p, int k);

  u64 p() const { return p_; }
  int k() const { return k_; }
  u64 m() const { return m_; }

  /// The same prime at a different exponent.
  Modulus with_exponent(int k) const { return Modulus(p_, k); }

  u64 reduce(i64 x) const {
    i64 r = x % static_cast<i64>(m_);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m_) : r);
  }
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= m_ ? s - m_ : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + m_ - b; }
  u64 mul(u64 a, u64 b) const { return (a * b) % m_; }
  u64 neg(u64 a) const { return a == 0 ? 0 : m_ - a; }
  bool is_unit(u64 a) const { return a % p_ != 0; }

  bool operator==(const Modulus& o) const { return p_ == o.p_ && k_ == o.k_; }

  std::string to_string() const;

 private:
  u64 p_;
  int k_;
  u64 m_;
};

/// An element of Z/p^kZ.
class ZmodPK {
 public:
  ZmodPK(i64 value, const Modulus& mod) : mod_(mod), v_(mod.reduce(value)) {}

  u64 value() const { return v_; }
  const Modulus& modulus() const { return mod_; }

  ZmodPK operator+(const ZmodPK& o) const;
  ZmodPK operator-(const ZmodPK& o) const;
  ZmodPK operator*(const ZmodPK& o) const;
  ZmodPK operator-() const { return ZmodPK(static_cast<i64>(mod_.neg(v_)), mod_); }

  ZmodPK inverse() const;
  ZmodPK pow(u64 e) const;
  bool is_unit() const { return mod_.is_unit(v_); }

  bool operator==(const ZmodPK& o) const { return mod_ == o.mod_ && v_ == o.v_; }

 private:
  void require_same(const ZmodPK& o) const;

  Modulus mod_;
  u64 v_;
};

}  // namespace kloo
