#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kloo/error.hpp"
#include "kloo/fq.hpp"
#include "kloo/modring.hpp"

namespace kloo {

/// Arithmetic of F_p on 32-bit residues.
struct PrimeField {
  using Elem = std::uint32_t;

  std::uint32_t p;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t c) const {
    std::int64_t r = c % static_cast<std::int64_t>(p);
    return static_cast<Elem>(r < 0 ? r + p : r);
  }
  Elem add(Elem a, Elem b) const { return (a + b) % p; }
  Elem sub(Elem a, Elem b) const { return (a + p - b) % p; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(std::uint64_t{a} * b % p); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem inv(Elem a) const { return static_cast<Elem>(inverse_mod(a, p)); }
  bool is_zero(Elem a) const { return a == 0; }
  bool same(const PrimeField& o) const { return p == o.p; }
};

/// Arithmetic of F_q = F_p[x]/(f).
struct ExtField {
  using Elem = FqElem;

  FqFieldPtr field;

  Elem zero() const { return FqElem::zero(field); }
  Elem one() const { return FqElem::one(field); }
  Elem from_int(std::int64_t c) const { return FqElem::from_int(field, c); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool same(const ExtField& o) const { return field == o.field || *field == *o.field; }
};

/// Dense row-major matrix over a field.
template <class Field>
class FieldMatrix {
 public:
  using Elem = typename Field::Elem;

  FieldMatrix(Field field, size_t rows, size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero()) {}

  static FieldMatrix identity(const Field& field, size_t n) {
    FieldMatrix m(field, n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const Field& field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Elem& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Elem& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  FieldMatrix operator*(const FieldMatrix& o) const {
    require(cols_ == o.rows_ && field_.same(o.field_), "matrix product shape/field mismatch");
    FieldMatrix r(field_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t k = 0; k < cols_; ++k) {
        const Elem& x = (*this)(i, k);
        if (field_.is_zero(x)) continue;
        for (size_t j = 0; j < o.cols_; ++j) r(i, j) = field_.add(r(i, j), field_.mul(x, o(k, j)));
      }
    }
    return r;
  }

  FieldMatrix operator+(const FieldMatrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
    FieldMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.add(a_[i], o.a_[i]);
    return r;
  }

  FieldMatrix operator-(const FieldMatrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference shape mismatch");
    FieldMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = field_.sub(a_[i], o.a_[i]);
    return r;
  }

  FieldMatrix scaled(const Elem& s) const {
    FieldMatrix r = *this;
    for (auto& x : r.a_) x = field_.mul(x, s);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_) {
      if (!field_.is_zero(x)) return false;
    }
    return true;
  }

  bool operator==(const FieldMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  static void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
  }

  Field field_;
  size_t rows_;
  size_t cols_;
  std::vector<Elem> a_;
};

using FpMatrix = FieldMatrix<PrimeField>;
using FqMatrix = FieldMatrix<ExtField>;

/// In-place reduced row echelon form; returns the pivot columns.
template <class Field>
std::vector<size_t> rref(FieldMatrix<Field>& m) {
  const Field& f = m.field();
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t piv = row;
    while (piv < m.rows() && f.is_zero(m(piv, col))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    }
    auto inv = f.inv(m(row, col));
    for (size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), inv);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m(i, col))) continue;
      auto factor = m(i, col);
      for (size_t j = col; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Field>
size_t rank(FieldMatrix<Field> m) {
  return rref(m).size();
}

/// Basis of the right kernel {v : M v = 0}, returned as the columns of a cols x dim matrix.
template <class Field>
FieldMatrix<Field> nullspace(const FieldMatrix<Field>& m) {
  FieldMatrix<Field> r = m;
  auto pivots = rref(r);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  FieldMatrix<Field> basis(f, m.cols(), free_cols.size());
  for (size_t t = 0; t < free_cols.size(); ++t) {
    size_t fc = free_cols[t];
    basis(fc, t) = f.one();
    for (size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], t) = f.neg(r(i, fc));
  }
  return basis;
}

/// One solution of M x = b, or nullopt when the system is inconsistent.
template <class Field>
std::optional<std::vector<typename Field::Elem>> solve(const FieldMatrix<Field>& m,
                                                       const std::vector<typename Field::Elem>& b) {
  const Field& f = m.field();
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  FieldMatrix<Field> aug(f, m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<typename Field::Elem> x(m.cols(), f.zero());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

template <class Field>
FieldMatrix<Field> matrix_power(const FieldMatrix<Field>& m, std::uint64_t e) {
  FieldMatrix<Field> r = FieldMatrix<Field>::identity(m.field(), m.rows());
  FieldMatrix<Field> b = m;
  while (e > 0) {
    if (e & 1U) r = r * b;
    e >>= 1U;
    if (e > 0) b = b * b;
  }
  return r;
}

/// Monic minimal polynomial (coefficients lowest degree first), found as the first
/// linear dependency among I, M, M^2, ... flattened to vectors.
template <class Field>
std::vector<typename Field::Elem> min_poly_coeffs(const FieldMatrix<Field>& m) {
  const Field& f = m.field();
  const size_t n = m.rows();
  std::vector<FieldMatrix<Field>> powers{FieldMatrix<Field>::identity(f, n)};
  for (size_t d = 1; d <= n; ++d) {
    powers.push_back(powers.back() * m);
    // solve sum_{i<d} c_i M^i = -M^d
    FieldMatrix<Field> sys(f, n * n, d);
    std::vector<typename Field::Elem> rhs(n * n, f.zero());
    for (size_t r = 0; r < n * n; ++r) {
      for (size_t i = 0; i < d; ++i) sys(r, i) = powers[i](r / n, r % n);
      rhs[r] = f.neg(powers[d](r / n, r % n));
    }
    if (auto c = solve(sys, rhs)) {
      c->push_back(f.one());
      return *c;
    }
  }
  throw Error(ErrorCode::Internal, "no annihilating polynomial of degree <= n");
}

inline FpMatrix to_fp_matrix(std::uint32_t p, size_t rows, size_t cols, const std::vector<std::uint64_t>& entries) {
  FpMatrix m(PrimeField{p}, rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) m(i, j) = static_cast<std::uint32_t>(entries[i * cols + j] % p);
  }
  return m;
}

}  // namespace kloo
