#include "kloo/fppoly.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "kloo/error.hpp"
#include "kloo/modring.hpp"

namespace kloo {

namespace {

using Coeff = FpPoly::Coeff;

Coeff red(std::int64_t x, Coeff p) {
  std::int64_t r = x % static_cast<std::int64_t>(p);
  return static_cast<Coeff>(r < 0 ? r + p : r);
}

Coeff inv_p(Coeff a, Coeff p) { return static_cast<Coeff>(inverse_mod(a, p)); }

void require_same_field(const FpPoly& a, const FpPoly& b) {
  if (a.p() != b.p()) {
    throw Error(ErrorCode::FieldMismatch,
                "polynomials over F_" + std::to_string(a.p()) + " and F_" + std::to_string(b.p()));
  }
}

}  // namespace

FpPoly::FpPoly(Coeff p, std::vector<Coeff> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  normalize();
}

FpPoly FpPoly::constant(Coeff p, std::int64_t c) { return FpPoly(p, {red(c, p)}); }

FpPoly FpPoly::monomial(Coeff p, int degree, std::int64_t c) {
  std::vector<Coeff> v(static_cast<size_t>(degree) + 1, 0);
  v.back() = red(c, p);
  return FpPoly(p, std::move(v));
}

FpPoly FpPoly::linear(Coeff p, std::int64_t a) { return FpPoly(p, {red(-a, p), 1}); }

void FpPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  require_same_field(*this, o);
  std::vector<Coeff> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = (coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i))) % p_;
  return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator-(const FpPoly& o) const { return *this + (-o); }

FpPoly FpPoly::operator-() const {
  std::vector<Coeff> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] == 0 ? 0 : p_ - c_[i];
  return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
  require_same_field(*this, o);
  if (is_zero() || o.is_zero()) return FpPoly(p_);
  std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t{c_[i]} * o.c_[j]) % p_;
    }
  }
  std::vector<Coeff> r(acc.begin(), acc.end());
  return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::scaled(std::int64_t s) const {
  Coeff sp = red(s, p_);
  std::vector<Coeff> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = static_cast<Coeff>(std::uint64_t{c_[i]} * sp % p_);
  return FpPoly(p_, std::move(r));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
  require_same_field(*this, d);
  if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<Coeff> rem = c_;
  int dd = d.degree();
  if (degree() < dd) return {FpPoly(p_), *this};
  std::vector<Coeff> quo(static_cast<size_t>(degree() - dd) + 1, 0);
  Coeff lead_inv = inv_p(d.leading(), p_);
  for (int i = degree(); i >= dd; --i) {
    Coeff c = rem[static_cast<size_t>(i)];
    if (c == 0) continue;
    Coeff q = static_cast<Coeff>(std::uint64_t{c} * lead_inv % p_);
    quo[static_cast<size_t>(i - dd)] = q;
    for (int j = 0; j <= dd; ++j) {
      auto& r = rem[static_cast<size_t>(i - dd + j)];
      r = static_cast<Coeff>((r + std::uint64_t{p_ - q} * d.c_[static_cast<size_t>(j)]) % p_);
    }
  }
  return {FpPoly(p_, std::move(quo)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_p(leading(), p_));
}

FpPoly FpPoly::derivative() const {
  std::vector<Coeff> r;
  for (size_t i = 1; i < c_.size(); ++i) r.push_back(static_cast<Coeff>(std::uint64_t{c_[i]} * (i % p_) % p_));
  return FpPoly(p_, std::move(r));
}

FpPoly FpPoly::negated_argument() const {
  std::vector<Coeff> r = c_;
  for (size_t i = 1; i < r.size(); i += 2) r[i] = r[i] == 0 ? 0 : p_ - r[i];
  return FpPoly(p_, std::move(r));
}

FpPoly::Coeff FpPoly::eval(Coeff x) const {
  std::uint64_t acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = (acc * x + c_[i]) % p_;
  return static_cast<Coeff>(acc);
}

bool FpPoly::operator<(const FpPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

std::string FpPoly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    Coeff c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(c);
    } else {
      if (c != 1) s += std::to_string(c) + "*";
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FpPoly lcm(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p());
  return ((a * b) / gcd(a, b)).monic();
}

FpPoly pow(const FpPoly& base, std::uint64_t e) {
  FpPoly r = FpPoly::constant(base.p(), 1), b = base;
  while (e > 0) {
    if (e & 1U) r = r * b;
    e >>= 1U;
    if (e > 0) b = b * b;
  }
  return r;
}

FpPoly powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m) {
  FpPoly r = FpPoly::constant(base.p(), 1) % m, b = base % m;
  while (e > 0) {
    if (e & 1U) r = (r * b) % m;
    e >>= 1U;
    if (e > 0) b = (b * b) % m;
  }
  return r;
}

const std::vector<FpPoly>& monic_irreducibles(Coeff p, int degree) {
  static std::mutex mu;
  static std::map<std::pair<Coeff, int>, std::unique_ptr<std::vector<FpPoly>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, degree});
    if (it != cache.end()) return *it->second;
  }
  // lower degrees first, outside the lock (recursion re-enters the cache)
  std::vector<const std::vector<FpPoly>*> lower;
  for (int d = 1; 2 * d <= degree; ++d) lower.push_back(&monic_irreducibles(p, d));

  auto out = std::make_unique<std::vector<FpPoly>>();
  u64 count = checked_pow(p, static_cast<unsigned>(degree), u64{1} << 26);
  std::vector<Coeff> c(static_cast<size_t>(degree) + 1, 0);
  c.back() = 1;
  for (u64 idx = 0; idx < count; ++idx) {
    u64 t = idx;
    for (int i = 0; i < degree; ++i) {
      c[static_cast<size_t>(i)] = static_cast<Coeff>(t % p);
      t /= p;
    }
    FpPoly f(p, c);
    bool irreducible = true;
    for (const auto* list : lower) {
      for (const auto& g : *list) {
        if ((f % g).is_zero()) {
          irreducible = false;
          break;
        }
      }
      if (!irreducible) break;
    }
    if (irreducible) out->push_back(std::move(f));
  }
  std::sort(out->begin(), out->end());
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(p, degree), std::move(out));
  return *it->second;
}

std::vector<PolyFactor> poly_factor(const FpPoly& m) {
  if (m.is_zero() || !m.is_monic()) {
    throw Error(ErrorCode::InvalidArgument, "poly_factor expects a nonzero monic polynomial");
  }
  std::vector<PolyFactor> out;
  FpPoly rem = m;
  for (int d = 1; 2 * d <= rem.degree(); ++d) {
    for (const auto& g : monic_irreducibles(m.p(), d)) {
      int mult = 0;
      while (rem.degree() >= d) {
        auto [q, r] = rem.divmod(g);
        if (!r.is_zero()) break;
        rem = std::move(q);
        ++mult;
      }
      if (mult > 0) out.push_back({g, mult});
    }
  }
  if (rem.degree() >= 1) {
    // no factor of degree <= deg/2 remains, so what is left is irreducible
    bool merged = false;
    for (auto& pf : out) {
      if (pf.factor == rem) {
        ++pf.multiplicity;
        merged = true;
      }
    }
    if (!merged) out.push_back({rem, 1});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.factor < b.factor; });
  return out;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  auto fs = poly_factor(f.monic());
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

int residue_symbol(const FpPoly& g, const FpPoly& f) {
  if (f.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "residue symbol needs odd p");
  if (f.degree() < 1 || !f.is_monic()) {
    throw Error(ErrorCode::InvalidArgument, "residue symbol modulus must be monic of positive degree");
  }
  FpPoly r = g % f;
  if (r.is_zero()) return 0;
  u64 q = checked_pow(f.p(), static_cast<unsigned>(f.degree()));
  FpPoly t = powmod(r, (q - 1) / 2, f);
  if (t.is_one()) return 1;
  if (t == FpPoly::constant(f.p(), -1)) return -1;
  throw Error(ErrorCode::InvalidArgument, f.to_string() + " is not irreducible");
}

}  // namespace kloo
