#include "kloo/modring.hpp"

#include <limits>

namespace kloo {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

u64 checked_pow(u64 base, unsigned exp, u64 limit) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) {
      throw Error(ErrorCode::TooLarge,
                  std::to_string(base) + "^" + std::to_string(exp) + " exceeds " + std::to_string(limit));
    }
    r *= base;
  }
  return r;
}

int valuation(u64 x, u64 p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}

u64 inverse_mod(u64 a, u64 m) {
  // extended Euclid on signed 64-bit values; m < 2^31
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw Error(ErrorCode::NotAUnit, std::to_string(a) + " is not a unit mod " + std::to_string(m));
  }
  i64 mm = static_cast<i64>(m);
  return static_cast<u64>(((old_s % mm) + mm) % mm);
}

Modulus::Modulus(u64 p, int k) : p_(p), k_(k), m_(1) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "exponent k must be >= 1");
  // primality is checked below 2^20 and trusted above
  if (p < (u64{1} << 20) ? !is_prime(p) : p < 2) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  }
  m_ = checked_pow(p, static_cast<unsigned>(k), kMaxModulus);
}

std::string Modulus::to_string() const {
  return std::to_string(p_) + "^" + std::to_string(k_);
}

void ZmodPK::require_same(const ZmodPK& o) const {
  if (!(mod_ == o.mod_)) {
    throw Error(ErrorCode::ModulusMismatch, mod_.to_string() + " vs " + o.mod_.to_string());
  }
}

ZmodPK ZmodPK::operator+(const ZmodPK& o) const {
  require_same(o);
  return ZmodPK(static_cast<i64>(mod_.add(v_, o.v_)), mod_);
}

ZmodPK ZmodPK::operator-(const ZmodPK& o) const {
  require_same(o);
  return ZmodPK(static_cast<i64>(mod_.sub(v_, o.v_)), mod_);
}

ZmodPK ZmodPK::operator*(const ZmodPK& o) const {
  require_same(o);
  return ZmodPK(static_cast<i64>(mod_.mul(v_, o.v_)), mod_);
}

ZmodPK ZmodPK::inverse() const {
  if (!is_unit()) {
    throw Error(ErrorCode::NotAUnit, std::to_string(v_) + " mod " + mod_.to_string());
  }
  return ZmodPK(static_cast<i64>(inverse_mod(v_, mod_.m())), mod_);
}

ZmodPK ZmodPK::pow(u64 e) const {
  u64 r = 1 % mod_.m(), b = v_;
  while (e > 0) {
    if (e & 1U) r = mod_.mul(r, b);
    b = mod_.mul(b, b);
    e >>= 1U;
  }
  return ZmodPK(static_cast<i64>(r), mod_);
}

}  // namespace kloo
