#include "kloo/kloosterman.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>

#include "kloo/counting.hpp"
#include "kloo/enumerate.hpp"
#include "kloo/gaussmat.hpp"
#include "kloo/parallel.hpp"
#include "kloo/sylvester.hpp"

namespace kloo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_pair(const ModMatrix& a, const ModMatrix& b) {
  if (!(a.modulus() == b.modulus())) throw Error(ErrorCode::ModulusMismatch, "A and B must share the modulus");
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "A and B must have the same size");
}

/// Phase Tr(AX + X^{-1}B) mod m for X given as a row-major array.
class PhaseKernel {
 public:
  PhaseKernel(const ModMatrix& a, const ModMatrix& b)
      : n_(a.n()), m_(a.modulus().m()), p_(a.modulus().p()), a_(a.entries()), b_(b.entries()), adj_(n_ * n_) {
    if (m_ <= (u64{1} << 22)) inv_ = inverse_table(m_);
  }

  /// False when X is not invertible.
  bool phase(const u64* x, u64& out) {
    const u64 d = det_mod(x, n_, m_);
    if (d % p_ == 0) return false;
    const u64 dinv = inv_.empty() ? inverse_mod(d, m_) : inv_[d];
    adjugate_mod(x, n_, m_, adj_.data());
    u64 ax = 0;
    u64 adjb = 0;
    for (size_t i = 0; i < n_; ++i) {
      for (size_t j = 0; j < n_; ++j) {
        ax += a_[i * n_ + j] * x[j * n_ + i] % m_;
        adjb += adj_[i * n_ + j] * b_[j * n_ + i] % m_;
      }
    }
    out = (ax + (adjb % m_) * dinv) % m_;
    return true;
  }

  u64 m() const { return m_; }

 private:
  size_t n_;
  u64 m_;
  u64 p_;
  std::vector<u64> a_;
  std::vector<u64> b_;
  std::vector<u64> adj_;
  std::vector<u64> inv_;
};

/// Histogram of phases over X = base + step * Z, Z ranging over (Z/(m/step))^{n^2}.
void accumulate_fiber(PhaseKernel& kernel, const std::vector<u64>& base, u64 step, size_t n, std::vector<i64>& hist) {
  const u64 m = kernel.m();
  const u64 range = m / step;
  std::vector<u64> x(n * n);
  enumerate_slice(n * n, range, 0, range, [&](const u64* z) {
    for (size_t i = 0; i < n * n; ++i) x[i] = (base[i] + step * z[i]) % m;
    u64 ph;
    if (kernel.phase(x.data(), ph)) ++hist[ph];
    return true;
  });
}

std::vector<ModMatrix> solutions_at(const ModMatrix& a, const ModMatrix& b) {
  u64 candidates = kMaxCandidates + 1;
  try {
    candidates = candidate_count(a.n() * a.n(), a.modulus().m());
  } catch (const Error&) {
  }
  if (candidates <= kMaxCandidates / 10 || a.modulus().p() == 2 || a.modulus().k() == 1) return solutions_brute(a, b);
  return solutions_lifted(a, b);
}

std::vector<std::vector<size_t>> chunks(size_t count, size_t max_chunks = 64) {
  const size_t c = std::min(count, max_chunks);
  std::vector<std::vector<size_t>> out(c);
  for (size_t i = 0; i < count; ++i) out[i * c / count].push_back(i);
  return out;
}

bool all_zero_mod_p(const ModMatrix& m) { return m.is_zero_mod_p(); }

Envelope make(std::string name, const Rational& coeff, u64 p, const Rational& e, bool applicable, std::string cond) {
  return Envelope{std::move(name), coeff, p, e, applicable, std::move(cond)};
}

EvalResult start(EvalMethod method, const ModMatrix& a, const ModMatrix& b) {
  EvalResult r{method, a, b, std::nullopt, {}, true, std::nullopt, {}, {}, 0};
  if (a.is_zero() && b.is_zero()) {
    r.notes.push_back("A = B = 0 mod p^k: the sum is #GL_n(Z/p^kZ), outside the hypotheses of the bounds");
  } else {
    r.envelopes = main_bounds(a, b);
  }
  return r;
}

}  // namespace

const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::Brute: return "brute";
    case EvalMethod::Reduced: return "reduced";
    case EvalMethod::Salie: return "salie";
  }
  return "?";
}

EvalResult eval_brute(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  const auto t0 = Clock::now();
  const size_t n = a.n();
  const u64 m = a.modulus().m();
  candidate_count(n * n, m);
  EvalResult r = start(EvalMethod::Brute, a, b);
  auto slices = value_slices(m);
  auto hists = parallel_map(slices.size(), [&](size_t i) {
    PhaseKernel kernel(a, b);
    std::vector<i64> h(m, 0);
    enumerate_slice(n * n, m, slices[i].first, slices[i].second, [&](const u64* x) {
      u64 ph;
      if (kernel.phase(x, ph)) ++h[ph];
      return true;
    });
    return h;
  });
  CharSum s(a.modulus());
  for (const auto& h : hists) s.add_histogram(h);
  r.value = s.to_complex();
  r.sum = std::move(s);
  r.seconds = seconds_since(t0);
  return r;
}

EvalResult eval_reduced(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  const auto t0 = Clock::now();
  const Modulus& mod = a.modulus();
  const int k = mod.k();
  if (k < 2) throw Error(ErrorCode::PreconditionFailed, "the reduced evaluation needs k > 1");
  const size_t n = a.n();
  const u64 p = mod.p();
  const u64 m = mod.m();
  const int l = k / 2;
  EvalResult r = start(EvalMethod::Reduced, a, b);

  const std::vector<ModMatrix> sols = solutions_at(a.reduced(l), b.reduced(l));
  const u64 pl = checked_pow(p, static_cast<unsigned>(l));
  const auto groups = chunks(sols.size());
  CharSum total(mod);

  if (k % 2 == 0) {
    candidate_count(n * n, m / pl);
    auto hists = parallel_map(groups.size(), [&](size_t g) {
      PhaseKernel kernel(a, b);
      std::vector<i64> h(m, 0);
      for (size_t idx : groups[g]) accumulate_fiber(kernel, sols[idx].entries(), pl, n, h);
      return h;
    });
    for (const auto& h : hists) total.add_histogram(h);
  } else {
    // S(X) depends on X mod p^{l+1}: group the lifts by that class
    const Modulus mod_l1 = mod.with_exponent(l + 1);
    const ModMatrix a1 = a.reduced(l + 1);
    const ModMatrix b1 = b.reduced(l + 1);
    const u64 step_out = pl * p;
    const u64 root_step = m / p;
    candidate_count(n * n, m / step_out);
    auto parts = parallel_map(groups.size(), [&](size_t g) {
      PhaseKernel kernel(a, b);
      std::map<std::vector<u64>, CharSum> gauss_cache;
      std::vector<i64> acc(m, 0);
      std::vector<i64> h(m);
      std::vector<u64> base(n * n);
      for (size_t idx : groups[g]) {
        const auto& x0 = sols[idx].entries();
        enumerate_slice(n * n, p, 0, p, [&](const u64* w) {
          for (size_t i = 0; i < n * n; ++i) base[i] = (x0[i] + pl * w[i]) % step_out;
          ModMatrix x1 = ModMatrix::from_entries(mod_l1, n, std::vector<i64>(base.begin(), base.end()));
          ModMatrix ax = a1 * x1;
          ModMatrix s = (ax - mat_inverse(x1) * b1).divided_by_p_power(l);
          ModMatrix t = ax.reduced(1);
          std::vector<u64> key(s.entries());
          key.insert(key.end(), t.entries().begin(), t.entries().end());
          auto it = gauss_cache.find(key);
          if (it == gauss_cache.end()) it = gauss_cache.emplace(key, gauss_brute(s, t)).first;
          const CharSum& gs = it->second;
          std::fill(h.begin(), h.end(), 0);
          accumulate_fiber(kernel, base, step_out, n, h);
          for (u64 j = 0; j < p; ++j) {
            const BigInt& gj = gs.coeffs()[j];
            if (gj == 0) continue;
            const i64 gv = gj.convert_to<i64>();
            const u64 shift = j * root_step;
            for (u64 e = 0; e < m; ++e) {
              if (h[e] != 0) acc[(e + shift) % m] += h[e] * gv;
            }
          }
          return true;
        });
      }
      return acc;
    });
    for (const auto& part : parts) total.add_histogram(part);
    total = total.divided_exact(big_pow(BigInt(p), n * n));
  }
  r.value = total.to_complex();
  r.sum = std::move(total);
  r.notes.push_back("solutions of XAX = B mod p^" + std::to_string(l) + ": " + std::to_string(sols.size()));
  r.seconds = seconds_since(t0);
  return r;
}

SemisimpleTest regular_semisimple_test(const ModMatrix& m) {
  SemisimpleTest t;
  t.char_poly = char_poly_mod_p(m);
  t.witness = gcd(t.char_poly, t.char_poly.derivative());
  t.regular = t.witness.is_one();
  return t;
}

EvalResult eval_salie(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  const auto t0 = Clock::now();
  const Modulus& mod = a.modulus();
  const u64 p = mod.p();
  const int k = mod.k();
  const size_t n = a.n();
  if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "the Salie form needs p odd");
  if (k < 2) throw Error(ErrorCode::PreconditionFailed, "the Salie form needs k >= 2");
  const ModMatrix ab = a * b;
  if (!mod.is_unit(det(ab))) throw Error(ErrorCode::PreconditionFailed, "det(AB) is not a unit mod p");
  if (!regular_semisimple_test(ab).regular) throw Error(ErrorCode::NotRegularSemisimple, "AB mod p has a repeated eigenvalue");
  EvalResult r = start(EvalMethod::Salie, a, b);

  // square roots mod p by enumeration
  const Modulus fp(p, 1);
  const ModMatrix ab1 = ab.reduced(1);
  candidate_count(n * n, p);
  std::vector<ModMatrix> roots;
  enumerate_slice(n * n, p, 0, p, [&](const u64* y) {
    ModMatrix ym = ModMatrix::from_entries(fp, n, std::vector<i64>(y, y + n * n));
    if (ym * ym == ab1) roots.push_back(ym);
    return true;
  });
  if (roots.size() > (size_t{1} << n)) throw Error(ErrorCode::Internal, "more than 2^n square roots of a regular semisimple matrix");

  SalieData data{roots.size(), CharSum(mod), static_cast<u64>(k) * n * n, std::nullopt};
  if (k % 2 == 1) data.gauss_weighted = CharSum(mod);
  for (const auto& y0 : roots) {
    // no two eigenvalues of Y sum to zero
    FpPoly chi = char_poly_mod_p(y0);
    if (!gcd(chi, chi.negated_argument()).is_one()) {
      throw Error(ErrorCode::PreconditionFailed, "a square root has eigenvalues summing to zero");
    }
    ModMatrix y = y0;
    for (int j = 1; j < k; ++j) {
      const Modulus next = mod.with_exponent(j + 1);
      ModMatrix yl = y.lifted(j + 1);
      ModMatrix rhs = (ab.reduced(j + 1) - yl * yl).divided_by_p_power(j);
      auto sol = sylvester_solve(y0, y0, rhs, SylvesterSign::Plus);
      if (!sol.particular || sol.kernel_dim() != 0) throw Error(ErrorCode::Internal, "Hensel step is not uniquely solvable");
      ModMatrix delta = ModMatrix::from_fp(next, *sol.particular).scaled(static_cast<i64>(checked_pow(p, static_cast<unsigned>(j))));
      y = yl + delta;
    }
    if (!(y * y == ab)) throw Error(ErrorCode::Internal, "lifted square root does not square to AB");
    data.root_sum.accumulate_raw(2 * y.trace() % mod.m());
    if (k % 2 == 1) {
      CharSum phase(mod);
      phase.accumulate_raw(2 * y.trace() % mod.m());
      CharSum weight = gauss_closed(ModMatrix(fp, n), y0).exact.lifted(k);
      *data.gauss_weighted += weight * phase;
    }
  }
  if (data.gauss_weighted) {
    *data.gauss_weighted = data.gauss_weighted->scaled(big_pow(BigInt(p), static_cast<u64>(k - 1) * n * n / 2));
  }

  const double scale = std::pow(static_cast<double>(p), static_cast<double>(data.scale_twice) / 2.0);
  r.value = data.root_sum.to_complex() * scale;
  r.phase_resolved = k % 2 == 0;
  if (data.scale_twice % 2 == 0) {
    CharSum exact = data.root_sum.scaled(big_pow(BigInt(p), data.scale_twice / 2));
    if (r.phase_resolved) r.sum = std::move(exact);
  }
  if (!r.phase_resolved) r.notes.push_back("odd k: value determined up to a p-th root of unity");
  r.envelopes.push_back(salie_bound(n, p, k));
  r.salie = std::move(data);
  r.seconds = seconds_since(t0);
  return r;
}

Envelope salie_bound(size_t n, u64 p, int k) {
  const i64 nn = static_cast<i64>(n);
  return make("cor1.2(2c) salie bound", Rational(big_pow(2, n)), p, Rational(k * nn * nn, 2), true,
              "det(AB) unit, AB regular semisimple");
}

std::vector<Envelope> main_bounds(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::BothZero, "A and B are both 0 mod p^k");
  const Modulus& mod = a.modulus();
  const u64 p = mod.p();
  const i64 k = mod.k();
  const i64 n = static_cast<i64>(a.n());
  const bool base = !(all_zero_mod_p(a) && all_zero_mod_p(b));
  const std::string base_cond = "A, B not both 0 mod p";
  const bool units = mod.is_unit(det(a)) && mod.is_unit(det(b));
  std::vector<Envelope> out;
  if (k == 1) {
    out.push_back(make("thm1.7(1) generic", 2, p, Rational(n * n - n + 1), base, base_cond));
    out.push_back(make("thm1.7(1) unit det", 4, p, Rational(3 * n * n, 4), base && units, base_cond + ", det A, det B units"));
    bool regular = false;
    if (mod.is_unit(det(b))) regular = regular_semisimple_test(a * mat_inverse(b)).regular;
    out.push_back(make("thm1.7(1) regular", 4, p, Rational(n * n, 2), base && regular,
                       base_cond + ", det B unit, AB^{-1} regular semisimple"));
  } else {
    const i64 c = (k + 1) / 2;
    out.push_back(make("thm1.7(2) generic", 1, p, Rational(k * n * n - c * (2 * n - 2)), base, base_cond));
    out.push_back(make("thm1.7(2) unit det", 1, p, Rational(k * n * n) - Rational(c * n * n, 2), base && units,
                       base_cond + ", det A, det B units"));
  }
  return out;
}

bool near_pth_root_of_unity(std::complex<double> z, u64 p, double tol) {
  for (u64 j = 0; j < p; ++j) {
    if (std::abs(z - std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p))) <= tol) return true;
  }
  return false;
}

std::vector<std::string> EvalResult::violated_envelopes() const {
  std::vector<std::string> bad;
  for (const auto& e : envelopes) {
    if (!e.applicable) continue;
    bool ok = sum ? e.holds_for(*sum) : std::abs(value) <= e.value() * (1 + 1e-9);
    if (!ok) bad.push_back(e.name);
  }
  return bad;
}

nlohmann::json EvalResult::to_json(bool exact_coeffs, bool timing) const {
  nlohmann::json j;
  j["instance"] = {{"n", n()}, {"p", modulus().p()}, {"k", modulus().k()}, {"A", a.to_text()}, {"B", b.to_text()}};
  j["method"] = to_string(method);
  if (sum) {
    j["value"] = sum->to_json(exact_coeffs);
  } else {
    j["value"] = {{"re", value.real()}, {"im", value.imag()}, {"abs", std::abs(value)}};
  }
  j["phase_resolved"] = phase_resolved;
  if (salie) {
    j["salie"] = {{"root_count", salie->root_count},
                  {"scale", "p^(" + std::to_string(salie->scale_twice) + "/2)"},
                  {"root_sum", salie->root_sum.to_json(exact_coeffs)}};
    if (salie->gauss_weighted) j["salie"]["gauss_weighted"] = salie->gauss_weighted->to_json(exact_coeffs);
  }
  nlohmann::json env = nlohmann::json::array();
  for (const auto& e : envelopes) {
    auto ej = e.to_json();
    if (e.applicable) ej["holds"] = sum ? e.holds_for(*sum) : std::abs(value) <= e.value() * (1 + 1e-9);
    env.push_back(ej);
  }
  j["envelopes"] = env;
  if (!notes.empty()) j["notes"] = notes;
  if (timing) j["seconds"] = seconds;
  return j;
}

}  // namespace kloo
