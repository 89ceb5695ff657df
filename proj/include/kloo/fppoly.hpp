#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kloo {

/// Polynomial over the prime field F_p, coefficients stored lowest degree first.
/// The zero polynomial has no coefficients.
class FpPoly {
 public:
  using Coeff = std::uint32_t;

  explicit FpPoly(Coeff p) : p_(p) {}
  FpPoly(Coeff p, std::vector<Coeff> coeffs);

  static FpPoly constant(Coeff p, std::int64_t c);
  static FpPoly x(Coeff p) { return monomial(p, 1, 1); }
  static FpPoly monomial(Coeff p, int degree, std::int64_t c);
  /// x - a
  static FpPoly linear(Coeff p, std::int64_t a);

  Coeff p() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Coeff coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  Coeff leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Coeff>& coeffs() const { return c_; }

  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly operator-() const;
  FpPoly scaled(std::int64_t s) const;

  /// Euclidean division; throws on division by zero.
  std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
  FpPoly operator/(const FpPoly& d) const { return divmod(d).first; }
  FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }

  FpPoly monic() const;
  FpPoly derivative() const;
  /// f(-x)
  FpPoly negated_argument() const;
  Coeff eval(Coeff x) const;

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator<(const FpPoly& o) const;

  std::string to_string() const;

 private:
  void normalize();

  Coeff p_;
  std::vector<Coeff> c_;
};

FpPoly gcd(FpPoly a, FpPoly b);
FpPoly lcm(const FpPoly& a, const FpPoly& b);
FpPoly pow(const FpPoly& base, std::uint64_t e);
/// base^e mod m
FpPoly powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m);

/// All monic irreducible polynomials of the given degree over F_p, in increasing order.
const std::vector<FpPoly>& monic_irreducibles(FpPoly::Coeff p, int degree);

bool is_irreducible(const FpPoly& f);

struct PolyFactor {
  FpPoly factor;
  int multiplicity;
};

/// Factorization of a monic polynomial into distinct monic irreducibles, sorted by
/// (degree, coefficients). Trial division against sieved irreducibles.
std::vector<PolyFactor> poly_factor(const FpPoly& m);

/// Quadratic residue symbol (g/f) for f monic irreducible and p odd:
/// +1 if g is a nonzero square mod f, -1 if a non-square, 0 if f divides g.
int residue_symbol(const FpPoly& g, const FpPoly& f);

}  // namespace kloo
