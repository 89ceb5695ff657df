#include "kloo/mod_matrix.hpp"

#include <algorithm>
#include <charconv>

namespace kloo {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

i64 parse_int(std::string_view tok) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  i64 v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad matrix entry '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

ModMatrix ModMatrix::identity(const Modulus& mod, size_t n) { return scalar(mod, n, 1); }

ModMatrix ModMatrix::scalar(const Modulus& mod, size_t n, i64 c) {
  ModMatrix m(mod, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, c);
  return m;
}

ModMatrix ModMatrix::from_rows(const Modulus& mod, const std::vector<std::vector<i64>>& rows) {
  ModMatrix m(mod, rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
    for (size_t j = 0; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

ModMatrix ModMatrix::from_entries(const Modulus& mod, size_t n, const std::vector<i64>& entries) {
  if (entries.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "entry count is not n^2");
  ModMatrix m(mod, n);
  for (size_t i = 0; i < n * n; ++i) m.a_[i] = mod.reduce(entries[i]);
  return m;
}

ModMatrix ModMatrix::from_fp(const Modulus& mod, const FpMatrix& fp) {
  if (fp.rows() != fp.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  ModMatrix m(mod, fp.rows());
  for (size_t i = 0; i < fp.rows(); ++i) {
    for (size_t j = 0; j < fp.cols(); ++j) m.set(i, j, fp(i, j));
  }
  return m;
}

ModMatrix ModMatrix::parse(std::string_view text, const Modulus& mod) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty matrix text");
  auto rows = split(text, ';');
  std::vector<std::vector<i64>> vals;
  for (auto r : rows) {
    std::vector<i64> row;
    for (auto tok : split(r, ',')) row.push_back(parse_int(tok));
    vals.push_back(std::move(row));
  }
  for (const auto& r : vals) {
    if (r.size() != vals.size()) {
      throw Error(ErrorCode::InvalidArgument, "matrix text '" + std::string(text) + "' is not square");
    }
  }
  return from_rows(mod, vals);
}

std::string ModMatrix::to_text() const {
  std::string s;
  for (size_t i = 0; i < n_; ++i) {
    if (i > 0) s += ';';
    for (size_t j = 0; j < n_; ++j) {
      if (j > 0) s += ',';
      s += std::to_string((*this)(i, j));
    }
  }
  return s;
}

void ModMatrix::require_compatible(const ModMatrix& o) const {
  if (!(mod_ == o.mod_)) throw Error(ErrorCode::ModulusMismatch, mod_.to_string() + " vs " + o.mod_.to_string());
  if (n_ != o.n_) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions differ");
}

ModMatrix ModMatrix::operator+(const ModMatrix& o) const {
  require_compatible(o);
  ModMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_.add(a_[i], o.a_[i]);
  return r;
}

ModMatrix ModMatrix::operator-(const ModMatrix& o) const {
  require_compatible(o);
  ModMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = mod_.sub(a_[i], o.a_[i]);
  return r;
}

ModMatrix ModMatrix::operator-() const {
  ModMatrix r = *this;
  for (auto& x : r.a_) x = mod_.neg(x);
  return r;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
  require_compatible(o);
  ModMatrix r(mod_, n_);
  for (size_t i = 0; i < n_; ++i) {
    for (size_t j = 0; j < n_; ++j) {
      u64 acc = 0;
      for (size_t k = 0; k < n_; ++k) acc = (acc + a_[i * n_ + k] * o.a_[k * n_ + j]) % mod_.m();
      r.a_[i * n_ + j] = acc;
    }
  }
  return r;
}

ModMatrix ModMatrix::scaled(i64 s) const {
  u64 sr = mod_.reduce(s);
  ModMatrix r = *this;
  for (auto& x : r.a_) x = mod_.mul(x, sr);
  return r;
}

ModMatrix ModMatrix::power(std::uint64_t e) const {
  ModMatrix r = identity(mod_, n_), b = *this;
  while (e > 0) {
    if (e & 1U) r = r * b;
    e >>= 1U;
    if (e > 0) b = b * b;
  }
  return r;
}

u64 ModMatrix::trace() const {
  u64 t = 0;
  for (size_t i = 0; i < n_; ++i) t = mod_.add(t, (*this)(i, i));
  return t;
}

bool ModMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](u64 x) { return x == 0; });
}

bool ModMatrix::is_zero_mod_p() const {
  return std::all_of(a_.begin(), a_.end(), [this](u64 x) { return x % mod_.p() == 0; });
}

ModMatrix ModMatrix::reduced(int j) const {
  if (j > mod_.k()) throw Error(ErrorCode::InvalidArgument, "cannot reduce to a larger modulus");
  Modulus target = mod_.with_exponent(j);
  ModMatrix r(target, n_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] % target.m();
  return r;
}

ModMatrix ModMatrix::lifted(int j) const {
  if (j < mod_.k()) throw Error(ErrorCode::InvalidArgument, "lift target must not be smaller");
  ModMatrix r(mod_.with_exponent(j), n_);
  r.a_ = a_;
  return r;
}

ModMatrix ModMatrix::divided_by_p_power(int e) const {
  if (e >= mod_.k()) throw Error(ErrorCode::InvalidArgument, "division would leave no digits");
  u64 d = checked_pow(mod_.p(), static_cast<unsigned>(e));
  ModMatrix r(mod_.with_exponent(mod_.k() - e), n_);
  for (size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] % d != 0) throw Error(ErrorCode::InexactDivision, "entry not divisible by p^" + std::to_string(e));
    r.a_[i] = a_[i] / d;
  }
  return r;
}

FpMatrix ModMatrix::to_fp() const {
  return to_fp_matrix(static_cast<std::uint32_t>(mod_.p()), n_, n_, a_);
}

ModMatrix mat_inverse(const ModMatrix& x) {
  const Modulus& mod = x.modulus();
  const size_t n = x.n();
  std::vector<u64> a(x.entries());
  ModMatrix inv = ModMatrix::identity(mod, n);
  std::vector<u64> b(inv.entries());
  auto at = [n](std::vector<u64>& v, size_t i, size_t j) -> u64& { return v[i * n + j]; };
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && !mod.is_unit(at(a, piv, c))) ++piv;
    if (piv == n) throw Error(ErrorCode::NotInvertible, "no unit pivot in column " + std::to_string(c));
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) {
        std::swap(at(a, piv, j), at(a, c, j));
        std::swap(at(b, piv, j), at(b, c, j));
      }
    }
    u64 s = inverse_mod(at(a, c, c), mod.m());
    for (size_t j = 0; j < n; ++j) {
      at(a, c, j) = mod.mul(at(a, c, j), s);
      at(b, c, j) = mod.mul(at(b, c, j), s);
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      u64 f = at(a, i, c);
      if (f == 0) continue;
      for (size_t j = 0; j < n; ++j) {
        at(a, i, j) = mod.sub(at(a, i, j), mod.mul(f, at(a, c, j)));
        at(b, i, j) = mod.sub(at(b, i, j), mod.mul(f, at(b, c, j)));
      }
    }
  }
  std::vector<i64> entries(b.begin(), b.end());
  return ModMatrix::from_entries(mod, n, entries);
}

std::vector<u64> char_poly(const ModMatrix& a) {
  // Berkowitz: division free, valid over any commutative ring
  const Modulus& mod = a.modulus();
  const size_t n = a.n();
  std::vector<u64> v{1, mod.neg(n > 0 ? a(0, 0) : 0)};  // highest degree first
  if (n == 0) return {1};
  for (size_t r = 1; r < n; ++r) {
    std::vector<u64> t(r + 2, 0);
    t[0] = 1;
    t[1] = mod.neg(a(r, r));
    // col = M^i C for i = 0..r-1, where M is the leading r x r block
    std::vector<u64> col(r);
    for (size_t i = 0; i < r; ++i) col[i] = a(i, r);
    for (size_t i = 0; i < r; ++i) {
      u64 dot = 0;
      for (size_t j = 0; j < r; ++j) dot = mod.add(dot, mod.mul(a(r, j), col[j]));
      t[i + 2] = mod.neg(dot);
      std::vector<u64> next(r, 0);
      for (size_t x = 0; x < r; ++x) {
        u64 acc = 0;
        for (size_t y = 0; y < r; ++y) acc = mod.add(acc, mod.mul(a(x, y), col[y]));
        next[x] = acc;
      }
      col = std::move(next);
    }
    std::vector<u64> nv(r + 2, 0);
    for (size_t i = 0; i < r + 2; ++i) {
      u64 acc = 0;
      for (size_t j = 0; j <= std::min(i, r); ++j) acc = mod.add(acc, mod.mul(t[i - j], v[j]));
      nv[i] = acc;
    }
    v = std::move(nv);
  }
  std::reverse(v.begin(), v.end());
  return v;
}

u64 det(const ModMatrix& m) {
  auto cp = char_poly(m);
  u64 c0 = cp[0];
  return m.n() % 2 == 0 ? c0 : m.modulus().neg(c0);
}

size_t rank_mod_p(const ModMatrix& m) { return rank(m.to_fp()); }

size_t stable_rank(const ModMatrix& m) {
  FpMatrix fp = m.to_fp();
  return rank(matrix_power(fp, m.n()));
}

SmithForm smith_form(const ModMatrix& m) {
  const Modulus& mod = m.modulus();
  const size_t n = m.n();
  const int k = mod.k();
  std::vector<u64> a(m.entries());
  auto at = [n, &a](size_t i, size_t j) -> u64& { return a[i * n + j]; };
  SmithForm out;
  for (size_t t = 0; t < n; ++t) {
    int best = k;
    size_t bi = t, bj = t;
    for (size_t i = t; i < n; ++i) {
      for (size_t j = t; j < n; ++j) {
        int v = valuation(at(i, j), mod.p(), k);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == k) {
      for (size_t r = t; r < n; ++r) out.exponents.push_back(k);
      break;
    }
    for (size_t j = 0; j < n; ++j) std::swap(at(bi, j), at(t, j));
    for (size_t i = 0; i < n; ++i) std::swap(at(i, bj), at(i, t));
    u64 pe = checked_pow(mod.p(), static_cast<unsigned>(best));
    u64 unit_inv = inverse_mod(at(t, t) / pe, mod.m());
    for (size_t j = t; j < n; ++j) at(t, j) = mod.mul(at(t, j), unit_inv);
    // pivot is now p^best; every other entry in the block has valuation >= best
    for (size_t i = t + 1; i < n; ++i) {
      u64 f = at(i, t) / pe;
      if (f == 0) continue;
      for (size_t j = t; j < n; ++j) at(i, j) = mod.sub(at(i, j), mod.mul(f, at(t, j)));
    }
    for (size_t j = t + 1; j < n; ++j) {
      u64 f = at(t, j) / pe;
      if (f == 0) continue;
      for (size_t i = t; i < n; ++i) at(i, j) = mod.sub(at(i, j), mod.mul(f, at(i, t)));
    }
    out.exponents.push_back(best);
  }
  return out;
}

SmithForm truncate(const SmithForm& s, int l) {
  SmithForm r = s;
  for (auto& e : r.exponents) e = std::min(e, l);
  return r;
}

FpPoly min_poly(const ModMatrix& m) {
  if (m.modulus().k() != 1) throw Error(ErrorCode::PreconditionFailed, "min_poly needs a matrix over F_p");
  const auto p = static_cast<std::uint32_t>(m.modulus().p());
  const size_t n = m.n();
  FpMatrix a = m.to_fp();
  const PrimeField& f = a.field();
  FpPoly acc = FpPoly::constant(p, 1);
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::vector<std::uint32_t>> krylov;
    std::vector<std::uint32_t> v(n, 0);
    v[i] = 1;
    krylov.push_back(v);
    while (true) {
      std::vector<std::uint32_t> w(n, 0);
      for (size_t r = 0; r < n; ++r) {
        std::uint32_t s = 0;
        for (size_t c = 0; c < n; ++c) s = f.add(s, f.mul(a(r, c), krylov.back()[c]));
        w[r] = s;
      }
      FpMatrix k(f, n, krylov.size());
      for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < krylov.size(); ++c) k(r, c) = krylov[c][r];
      }
      if (auto coeffs = solve(k, w)) {
        std::vector<std::uint32_t> poly(krylov.size() + 1, 0);
        for (size_t c = 0; c < coeffs->size(); ++c) poly[c] = f.neg((*coeffs)[c]);
        poly.back() = 1;
        acc = lcm(acc, FpPoly(p, poly));
        break;
      }
      krylov.push_back(std::move(w));
    }
  }
  return acc;
}

FpPoly char_poly_mod_p(const ModMatrix& m) {
  ModMatrix r = m.reduced(1);
  auto cp = char_poly(r);
  std::vector<std::uint32_t> c(cp.begin(), cp.end());
  return FpPoly(static_cast<std::uint32_t>(m.modulus().p()), c);
}

FpMatrix eval_poly(const FpPoly& poly, const FpMatrix& m) {
  const PrimeField& f = m.field();
  FpMatrix acc(f, m.rows(), m.cols());
  FpMatrix id = FpMatrix::identity(f, m.rows());
  for (int i = poly.degree(); i >= 0; --i) {
    acc = acc * m + id.scaled(poly.coeff(i));
  }
  return acc;
}

}  // namespace kloo
