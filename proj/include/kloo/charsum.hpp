#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kloo/bigint.hpp"
#include "kloo/modring.hpp"

namespace kloo {

/// Element of the group ring Z[Z/mZ], m = p^k, read as sum_j coeffs[j] e(j/m).
class CharSum {
 public:
  explicit CharSum(const Modulus& mod) : mod_(mod), c_(mod.m()) {}

  const Modulus& modulus() const { return mod_; }
  u64 m() const { return mod_.m(); }
  const std::vector<BigInt>& coeffs() const { return c_; }

  void accumulate(const ZmodPK& exponent, const BigInt& weight = 1);
  void accumulate_raw(u64 exponent, const BigInt& weight = 1) { c_[exponent % mod_.m()] += weight; }
  /// Adds counts[j] to coeffs[j]; counts.size() must equal m.
  void add_histogram(const std::vector<i64>& counts);

  CharSum& operator+=(const CharSum& o);
  CharSum& operator-=(const CharSum& o);
  CharSum operator+(const CharSum& o) const { CharSum r = *this; return r += o; }
  CharSum operator-(const CharSum& o) const { CharSum r = *this; return r -= o; }
  CharSum scaled(const BigInt& s) const;
  /// Product in the group ring.
  CharSum operator*(const CharSum& o) const;
  /// Multiplication by e(shift/m).
  CharSum rotated(u64 shift) const;
  /// Complex conjugate: j -> -j.
  CharSum conj() const;
  /// Same value viewed at modulus p^k2, k2 >= k: index j goes to j p^{k2-k}.
  CharSum lifted(int k2) const;
  /// Coefficient-wise exact division; throws InexactDivision on a remainder.
  CharSum divided_exact(const BigInt& d) const;

  /// Reduction modulo Phi_{p^k}: only indices below phi(p^k) survive.
  CharSum canonical() const;
  bool is_zero() const;
  /// Equality of complex values, decided exactly.
  bool same_value(const CharSum& o) const;
  /// The value when it is a rational integer.
  std::optional<BigInt> as_integer() const;
  /// Exact |s|^2 as a group-ring element (canonical).
  CharSum norm_squared() const { return (*this * conj()).canonical(); }

  std::complex<double> to_complex() const;
  double magnitude() const { return std::abs(to_complex()); }
  /// |s|^2 evaluated with about 100 significant digits, as a decimal string.
  std::string norm_squared_hp() const;

  /// {"re","im","abs"} plus canonical "exact_coeffs" when requested.
  nlohmann::json to_json(bool exact = true) const;

  static CharSum constant(const Modulus& mod, const BigInt& c);

 private:
  void require_same(const CharSum& o) const;

  Modulus mod_;
  std::vector<BigInt> c_;
};

/// Quadratic Gauss sum g_p = sum_u e(u^2/p): sqrt(p) for p = 1 mod 4, i sqrt(p) for p = 3 mod 4.
struct GaussConstant {
  u64 p;
  /// 0 for sqrt(p), 1 for i sqrt(p).
  int i_power;
  /// The same number as an element of Z[e(1/p)].
  CharSum exact;

  std::complex<double> value() const;
};

GaussConstant gauss_constant(u64 p);

/// Whether |s| <= c * p^{e} holds, decided without rounding when |s|^2 is a rational
/// integer and with 100-digit arithmetic otherwise.
bool magnitude_at_most(const CharSum& s, const Rational& c, u64 p, const Rational& e);

/// Whether x <= c * p^{e} for a nonnegative integer x, exactly.
bool integer_at_most(const BigInt& x, const Rational& c, u64 p, const Rational& e);

}  // namespace kloo
