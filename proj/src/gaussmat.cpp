#include "kloo/gaussmat.hpp"

#include <cmath>
#include <numbers>

#include "kloo/enumerate.hpp"
#include "kloo/parallel.hpp"
#include "kloo/sylvester.hpp"

namespace kloo {

namespace {

constexpr u64 kMaxGaussCandidates = 100'000'000;

std::vector<u64> entries_mod_p(const ModMatrix& m) {
  std::vector<u64> e(m.entries());
  for (auto& x : e) x %= m.modulus().p();
  return e;
}

/// Tr(T Y^2) mod p for row-major arrays.
u64 quad_value(const std::vector<u64>& t, const std::vector<u64>& y, size_t n, u64 p) {
  u64 s = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      u64 y2 = 0;
      for (size_t k = 0; k < n; ++k) y2 += y[j * n + k] * y[k * n + i];
      s += t[i * n + j] * (y2 % p);
    }
  }
  return s % p;
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  Modulus mod(p, 1);
  ZmodPK x(static_cast<i64>(a), mod);
  return x.pow((p - 1) / 2).value() == 1 ? 1 : -1;
}

}  // namespace

CharSum gauss_brute(const ModMatrix& s_in, const ModMatrix& t_in) {
  if (s_in.n() != t_in.n()) throw Error(ErrorCode::DimensionMismatch, "S and T differ in size");
  if (s_in.modulus().p() != t_in.modulus().p()) throw Error(ErrorCode::ModulusMismatch, "S and T over different primes");
  const size_t n = s_in.n();
  const u64 p = s_in.modulus().p();
  candidate_count(n * n, p, kMaxGaussCandidates);
  const auto s = entries_mod_p(s_in);
  const auto t = entries_mod_p(t_in);
  auto slices = value_slices(p);
  auto hists = parallel_map(slices.size(), [&](size_t i) {
    std::vector<i64> h(p, 0);
    std::vector<u64> u2(n * n);
    enumerate_slice(n * n, p, slices[i].first, slices[i].second, [&](const u64* u) {
      u64 phase = 0;
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
          u64 acc = 0;
          for (size_t c = 0; c < n; ++c) acc += u[a * n + c] * u[c * n + b];
          u2[a * n + b] = acc % p;
        }
      }
      for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) phase += s[a * n + b] * u[b * n + a] + t[a * n + b] * u2[b * n + a];
      }
      ++h[phase % p];
      return true;
    });
    return h;
  });
  CharSum out(Modulus(p, 1));
  for (const auto& h : hists) out.add_histogram(h);
  return out;
}

GaussClosed gauss_closed(const ModMatrix& s_in, const ModMatrix& t_in) {
  const u64 p = t_in.modulus().p();
  if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "closed Gauss sum needs p odd");
  if (s_in.n() != t_in.n()) throw Error(ErrorCode::DimensionMismatch, "S and T differ in size");
  const Modulus fp(p, 1);
  const ModMatrix s = s_in.reduced(1);
  const ModMatrix t = t_in.reduced(1);
  const size_t n = t.n();
  const size_t dim = n * n;
  PrimeField f{static_cast<std::uint32_t>(p)};
  const auto inv2 = f.inv(2);

  GaussClosed out{.exact = CharSum(fp), .literal = {}};
  auto riesz = sylvester_solve(t, t, s, SylvesterSign::Plus);
  out.kernel_dim = static_cast<int>(riesz.kernel_dim());

  // Gram matrix of Q(u) = u^T M u with M(a, b) = Tr(T(E_a E_b + E_b E_a)) / 2
  FpMatrix gram(f, dim, dim);
  const auto te = entries_mod_p(t);
  for (size_t a = 0; a < dim; ++a) {
    const size_t i = a / n, j = a % n;
    for (size_t b = 0; b < dim; ++b) {
      const size_t k = b / n, l = b % n;
      u64 v = 0;
      if (j == k) v += te[l * n + i];
      if (l == i) v += te[j * n + k];
      gram(a, b) = f.mul(static_cast<std::uint32_t>(v % p), inv2);
    }
  }

  // congruence diagonalization
  std::vector<std::uint32_t> diag;
  for (size_t k = 0; k < dim; ++k) {
    size_t piv = dim;
    for (size_t i = k; i < dim && piv == dim; ++i) {
      if (gram(i, i) != 0) piv = i;
    }
    if (piv == dim) {
      size_t bi = dim, bj = dim;
      for (size_t i = k; i < dim && bi == dim; ++i) {
        for (size_t j = i + 1; j < dim; ++j) {
          if (gram(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
        }
      }
      if (bi == dim) break;
      // e_i <- e_i + e_j makes the diagonal entry 2 M(i, j) != 0
      for (size_t c = 0; c < dim; ++c) gram(bi, c) = f.add(gram(bi, c), gram(bj, c));
      for (size_t r = 0; r < dim; ++r) gram(r, bi) = f.add(gram(r, bi), gram(r, bj));
      piv = bi;
    }
    if (piv != k) {
      for (size_t c = 0; c < dim; ++c) std::swap(gram(piv, c), gram(k, c));
      for (size_t r = 0; r < dim; ++r) std::swap(gram(r, piv), gram(r, k));
    }
    const auto d = gram(k, k);
    const auto dinv = f.inv(d);
    for (size_t r = k + 1; r < dim; ++r) {
      if (gram(r, k) == 0) continue;
      const auto factor = f.mul(gram(r, k), dinv);
      for (size_t c = 0; c < dim; ++c) gram(r, c) = f.sub(gram(r, c), f.mul(factor, gram(k, c)));
      for (size_t c = 0; c < dim; ++c) gram(c, r) = f.sub(gram(c, r), f.mul(factor, gram(c, k)));
    }
    diag.push_back(d);
  }
  out.rank = static_cast<int>(diag.size());
  if (out.rank + out.kernel_dim != static_cast<int>(dim)) {
    throw Error(ErrorCode::Internal, "rank of Q and the Sylvester kernel do not add up to n^2");
  }
  out.gp_power = out.rank;
  out.p_power = static_cast<int>(dim) - out.rank;
  if (!riesz.particular) {
    out.zero = true;
    out.legendre = 0;
    out.literal = 0;
    return out;
  }
  int leg = 1;
  for (auto d : diag) leg *= legendre(d, p);
  out.legendre = leg;

  std::vector<u64> y(dim);
  for (size_t r = 0; r < dim; ++r) y[r] = (*riesz.particular)(r / n, r % n);
  out.phase_num = (p - quad_value(te, y, n, p)) % p;

  // g_p^R = g_p^{R mod 2} ((-1/p) p)^{floor(R/2)}
  const GaussConstant g = gauss_constant(p);
  CharSum value = CharSum::constant(fp, 1);
  if (out.rank % 2 == 1) value = g.exact;
  const i64 g2 = p % 4 == 1 ? static_cast<i64>(p) : -static_cast<i64>(p);
  BigInt scale = big_pow(BigInt(g2), static_cast<std::uint64_t>(out.rank / 2)) * big_pow(BigInt(p), static_cast<std::uint64_t>(out.p_power)) * leg;
  out.exact = value.scaled(scale).rotated(out.phase_num);
  const double magnitude = std::pow(static_cast<double>(p), static_cast<double>(dim) - out.rank / 2.0);
  out.literal = static_cast<double>(leg) * magnitude * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(out.phase_num) / static_cast<double>(p));
  return out;
}

bool GaussClosed::literal_phase_mismatch() const {
  const auto v = value();
  return std::abs(literal - v) > 1e-6 * std::max(1.0, std::abs(v));
}

nlohmann::json GaussClosed::to_json() const {
  nlohmann::json j{{"zero", zero},
                   {"legendre", legendre},
                   {"phase_num", phase_num},
                   {"gp_power", gp_power},
                   {"p_power", p_power},
                   {"rank", rank},
                   {"kernel_dim", kernel_dim}};
  j["value"] = exact.to_json(false);
  j["literal_phase_mismatch"] = literal_phase_mismatch();
  return j;
}

Envelope gauss_bound(const ModMatrix& t) {
  const i64 n = static_cast<i64>(t.n());
  const i64 r = static_cast<i64>(rank_mod_p(t));
  const i64 ri = static_cast<i64>(stable_rank(t));
  return Envelope{"prop1.6 gauss bound", 1, t.modulus().p(), Rational((n - r) * (n - r)) + Rational(ri * ri, 2), true,
                  "p odd"};
}

Envelope gauss_magnitude(const ModMatrix& t) {
  const i64 n = static_cast<i64>(t.n());
  const i64 k = static_cast<i64>(kernel_dim_direct(t.reduced(1)));
  return Envelope{"gauss magnitude p^{(n^2+K)/2}", 1, t.modulus().p(), Rational(n * n + k, 2), true, "nonzero sum"};
}

}  // namespace kloo
