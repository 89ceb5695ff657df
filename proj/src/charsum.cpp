#include "kloo/charsum.hpp"

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "kloo/error.hpp"

namespace kloo {

namespace {

using HpFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<110>>;

/// Real part of the value at high precision.
HpFloat hp_real(const CharSum& s) {
  const HpFloat two_pi = 2 * boost::math::constants::pi<HpFloat>();
  HpFloat re = 0;
  const auto& c = s.coeffs();
  for (size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    re += HpFloat(c[j]) * cos(two_pi * HpFloat(j) / HpFloat(s.m()));
  }
  return re;
}

}  // namespace

void CharSum::require_same(const CharSum& o) const {
  if (!(mod_ == o.mod_)) throw Error(ErrorCode::ModulusMismatch, "character sums at different moduli");
}

void CharSum::accumulate(const ZmodPK& exponent, const BigInt& weight) {
  if (!(exponent.modulus() == mod_)) throw Error(ErrorCode::ModulusMismatch, "exponent modulus differs from accumulator");
  c_[exponent.value()] += weight;
}

void CharSum::add_histogram(const std::vector<i64>& counts) {
  if (counts.size() != c_.size()) throw Error(ErrorCode::DimensionMismatch, "histogram length must equal the modulus");
  for (size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] != 0) c_[j] += counts[j];
  }
}

CharSum& CharSum::operator+=(const CharSum& o) {
  require_same(o);
  for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

CharSum& CharSum::operator-=(const CharSum& o) {
  require_same(o);
  for (size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

CharSum CharSum::scaled(const BigInt& s) const {
  CharSum r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

CharSum CharSum::operator*(const CharSum& o) const {
  require_same(o);
  const u64 m = mod_.m();
  std::vector<u64> nz;
  for (u64 j = 0; j < m; ++j) {
    if (o.c_[j] != 0) nz.push_back(j);
  }
  CharSum r(mod_);
  for (u64 i = 0; i < m; ++i) {
    if (c_[i] == 0) continue;
    for (u64 j : nz) r.c_[(i + j) % m] += c_[i] * o.c_[j];
  }
  return r;
}

CharSum CharSum::rotated(u64 shift) const {
  CharSum r(mod_);
  const u64 m = mod_.m();
  for (u64 j = 0; j < m; ++j) r.c_[(j + shift) % m] = c_[j];
  return r;
}

CharSum CharSum::conj() const {
  CharSum r(mod_);
  const u64 m = mod_.m();
  for (u64 j = 0; j < m; ++j) r.c_[(m - j) % m] = c_[j];
  return r;
}

CharSum CharSum::lifted(int k2) const {
  if (k2 < mod_.k()) throw Error(ErrorCode::InvalidArgument, "cannot lift to a smaller exponent");
  Modulus target = mod_.with_exponent(k2);
  const u64 step = target.m() / mod_.m();
  CharSum r(target);
  for (u64 j = 0; j < mod_.m(); ++j) r.c_[j * step] = c_[j];
  return r;
}

CharSum CharSum::divided_exact(const BigInt& d) const {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  CharSum r(mod_);
  for (size_t j = 0; j < c_.size(); ++j) {
    BigInt q, rem;
    boost::multiprecision::divide_qr(c_[j], d, q, rem);
    if (rem != 0) throw Error(ErrorCode::InexactDivision, "coefficient " + std::to_string(j) + " not divisible by " + d.str());
    r.c_[j] = q;
  }
  return r;
}

CharSum CharSum::canonical() const {
  // x^{p^{k-1}(p-1) + t} = -sum_{i<p-1} x^{t + i p^{k-1}} modulo Phi_{p^k}
  CharSum r = *this;
  const u64 m = mod_.m();
  const u64 step = m / mod_.p();
  const u64 phi = m - step;
  for (u64 j = m; j-- > phi;) {
    if (r.c_[j] == 0) continue;
    BigInt c = r.c_[j];
    r.c_[j] = 0;
    const u64 base = j - phi;
    for (u64 i = 0; i + 1 < mod_.p(); ++i) r.c_[base + i * step] -= c;
  }
  return r;
}

bool CharSum::is_zero() const {
  CharSum c = canonical();
  for (const auto& x : c.c_) {
    if (x != 0) return false;
  }
  return true;
}

bool CharSum::same_value(const CharSum& o) const {
  require_same(o);
  return (*this - o).is_zero();
}

std::optional<BigInt> CharSum::as_integer() const {
  CharSum c = canonical();
  for (size_t j = 1; j < c.c_.size(); ++j) {
    if (c.c_[j] != 0) return std::nullopt;
  }
  return c.c_[0];
}

std::complex<double> CharSum::to_complex() const {
  const u64 m = mod_.m();
  long double re = 0;
  long double im = 0;
  for (u64 j = 0; j < m; ++j) {
    if (c_[j] == 0) continue;
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j) / static_cast<long double>(m);
    const long double w = c_[j].convert_to<long double>();
    re += w * std::cos(angle);
    im += w * std::sin(angle);
  }
  // exact zeros for real or purely imaginary sums
  const CharSum bar = conj();
  if ((*this - bar).is_zero()) im = 0;
  if ((*this + bar).is_zero()) re = 0;
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string CharSum::norm_squared_hp() const { return hp_real(norm_squared()).str(40); }

nlohmann::json CharSum::to_json(bool exact) const {
  auto z = to_complex();
  nlohmann::json j{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}};
  if (exact) {
    CharSum c = canonical();
    nlohmann::json coeffs = nlohmann::json::array();
    size_t last = 0;
    for (size_t i = 0; i < c.c_.size(); ++i) {
      if (c.c_[i] != 0) last = i + 1;
    }
    for (size_t i = 0; i < last; ++i) coeffs.push_back(c.c_[i].str());
    j["exact_coeffs"] = coeffs;
    j["modulus"] = mod_.m();
  }
  return j;
}

CharSum CharSum::constant(const Modulus& mod, const BigInt& c) {
  CharSum r(mod);
  r.c_[0] = c;
  return r;
}

std::complex<double> GaussConstant::value() const {
  const double r = std::sqrt(static_cast<double>(p));
  return i_power == 0 ? std::complex<double>(r, 0) : std::complex<double>(0, r);
}

GaussConstant gauss_constant(u64 p) {
  if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "Gauss constant needs an odd prime");
  Modulus mod(p, 1);
  CharSum g(mod);
  for (u64 u = 0; u < p; ++u) g.accumulate_raw(u * u % p);
  return GaussConstant{p, p % 4 == 1 ? 0 : 1, g};
}

bool integer_at_most(const BigInt& x, const Rational& c, u64 p, const Rational& e) {
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "expected a nonnegative quantity");
  if (c < 0) return false;
  // x^b den^b <= num^b p^a with e = a/b and c = num/den
  const BigInt a = boost::multiprecision::numerator(e);
  const auto b = boost::multiprecision::denominator(e).convert_to<std::uint64_t>();
  BigInt lhs = big_pow(x * boost::multiprecision::denominator(c), b);
  BigInt rhs = big_pow(boost::multiprecision::numerator(c), b);
  if (a >= 0) return lhs <= rhs * big_pow(BigInt(p), a.convert_to<std::uint64_t>());
  return lhs * big_pow(BigInt(p), BigInt(-a).convert_to<std::uint64_t>()) <= rhs;
}

bool magnitude_at_most(const CharSum& s, const Rational& c, u64 p, const Rational& e) {
  if (c < 0) return false;
  CharSum n2 = s.norm_squared();
  if (auto v = n2.as_integer()) {
    // |s|^2 <= c^2 p^{2e}
    return integer_at_most(*v, c * c, p, e * 2);
  }
  HpFloat lhs = hp_real(n2);
  HpFloat c_hp = HpFloat(boost::multiprecision::numerator(c)) / HpFloat(boost::multiprecision::denominator(c));
  const Rational e2 = e * 2;
  HpFloat exponent = HpFloat(boost::multiprecision::numerator(e2)) / HpFloat(boost::multiprecision::denominator(e2));
  HpFloat rhs = c_hp * c_hp * pow(HpFloat(p), exponent);
  return lhs <= rhs;
}

}  // namespace kloo
