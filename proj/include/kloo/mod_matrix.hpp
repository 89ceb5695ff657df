#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kloo/field_linalg.hpp"
#include "kloo/fppoly.hpp"
#include "kloo/modring.hpp"

namespace kloo {

/// Dense square matrix over Z/p^kZ, row-major.
class ModMatrix {
 public:
  ModMatrix(const Modulus& mod, size_t n) : mod_(mod), n_(n), a_(n * n, 0) {}

  static ModMatrix identity(const Modulus& mod, size_t n);
  static ModMatrix scalar(const Modulus& mod, size_t n, i64 c);
  static ModMatrix from_rows(const Modulus& mod, const std::vector<std::vector<i64>>& rows);
  /// Row-major entries reduced into the modulus.
  static ModMatrix from_entries(const Modulus& mod, size_t n, const std::vector<i64>& entries);
  /// Entries mod p of an F_p matrix, placed in Z/p^kZ.
  static ModMatrix from_fp(const Modulus& mod, const FpMatrix& m);

  /// Text format "r,c;r,c": rows separated by ';', entries by ','.
  static ModMatrix parse(std::string_view text, const Modulus& mod);
  std::string to_text() const;

  const Modulus& modulus() const { return mod_; }
  size_t n() const { return n_; }
  u64 operator()(size_t i, size_t j) const { return a_[i * n_ + j]; }
  void set(size_t i, size_t j, i64 v) { a_[i * n_ + j] = mod_.reduce(v); }
  const std::vector<u64>& entries() const { return a_; }

  ModMatrix operator+(const ModMatrix& o) const;
  ModMatrix operator-(const ModMatrix& o) const;
  ModMatrix operator*(const ModMatrix& o) const;
  ModMatrix operator-() const;
  ModMatrix scaled(i64 s) const;
  ModMatrix power(std::uint64_t e) const;

  u64 trace() const;
  bool is_zero() const;
  /// True when every entry is divisible by p.
  bool is_zero_mod_p() const;

  /// Same integer entries reduced to p^j (j <= k).
  ModMatrix reduced(int j) const;
  /// Same integer representatives viewed modulo p^j (j >= k).
  ModMatrix lifted(int j) const;
  /// Entry-wise exact division by p^e; throws InexactDivision if some entry is not divisible.
  /// The result lives modulo p^(k-e).
  ModMatrix divided_by_p_power(int e) const;

  FpMatrix to_fp() const;

  bool operator==(const ModMatrix& o) const { return mod_ == o.mod_ && n_ == o.n_ && a_ == o.a_; }

 private:
  void require_compatible(const ModMatrix& o) const;

  Modulus mod_;
  size_t n_;
  std::vector<u64> a_;
};

/// Gauss-Jordan inverse with unit pivots; throws NotInvertible when rank mod p < n.
ModMatrix mat_inverse(const ModMatrix& x);

/// Determinant mod p^k (division free).
u64 det(const ModMatrix& m);

/// Characteristic polynomial det(xI - M) mod p^k, lowest degree first, monic.
std::vector<u64> char_poly(const ModMatrix& m);

size_t rank_mod_p(const ModMatrix& m);

/// lim rank(M^j) over F_p, attained at j = n.
size_t stable_rank(const ModMatrix& m);

struct SmithForm {
  /// Exponents e_1 <= ... <= e_n of the elementary divisors p^{e_i}; e_i = k encodes 0.
  std::vector<int> exponents;

  bool operator==(const SmithForm& o) const { return exponents == o.exponents; }
};

SmithForm smith_form(const ModMatrix& m);

/// Smith exponents truncated at level l: the invariant factors modulo p^l.
SmithForm truncate(const SmithForm& s, int l);

/// Minimal polynomial over F_p via Krylov sequences of the unit vectors and LCM.
/// Requires k = 1.
FpPoly min_poly(const ModMatrix& m);

/// Characteristic polynomial over F_p of the reduction mod p.
FpPoly char_poly_mod_p(const ModMatrix& m);

/// p(M) for a polynomial over F_p; M is reduced mod p.
FpMatrix eval_poly(const FpPoly& poly, const FpMatrix& m);

}  // namespace kloo
