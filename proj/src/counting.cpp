#include "kloo/counting.hpp"

#include <algorithm>

#include "kloo/enumerate.hpp"
#include "kloo/parallel.hpp"
#include "kloo/sylvester.hpp"

namespace kloo {

namespace {

void require_pair(const ModMatrix& a, const ModMatrix& b) {
  if (!(a.modulus() == b.modulus())) throw Error(ErrorCode::ModulusMismatch, "A and B must share the modulus");
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "A and B must have the same size");
}

/// Enumerates X with X A X = B over one slice; stops after the first hit when `first_only`.
template <class OnHit>
void scan_slice(const ModMatrix& a, const ModMatrix& b, u64 lo, u64 hi, bool first_only, OnHit on_hit) {
  const size_t n = a.n();
  const u64 m = a.modulus().m();
  const u64 p = a.modulus().p();
  const auto& ae = a.entries();
  const auto& be = b.entries();
  std::vector<u64> xa(n * n);
  enumerate_slice(n * n, m, lo, hi, [&](const u64* x) {
    if (det_mod(x, n, m) % p == 0) return true;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        u64 s = 0;
        for (size_t t = 0; t < n; ++t) s += x[i * n + t] * ae[t * n + j] % m;
        xa[i * n + j] = s % m;
      }
    }
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        u64 s = 0;
        for (size_t t = 0; t < n; ++t) s += xa[i * n + t] * x[t * n + j] % m;
        if (s % m != be[i * n + j]) return true;
      }
    }
    on_hit(x);
    return !first_only;
  });
}

ModMatrix matrix_from(const Modulus& mod, size_t n, const u64* x) {
  ModMatrix r(mod, n);
  for (size_t i = 0; i < n * n; ++i) r.set(i / n, i % n, static_cast<i64>(x[i]));
  return r;
}

Envelope make(std::string name, const Rational& coeff, u64 p, const Rational& e, bool applicable, std::string cond) {
  return Envelope{std::move(name), coeff, p, e, applicable, std::move(cond)};
}

BigInt component_closed(const PrimaryComponent& comp, u64 p) {
  const Partition& lambda = comp.jordan.lambda;
  if (comp.nilpotent()) return centralizer_order(lambda, BigInt(p));
  const BigInt q = big_pow(BigInt(p), static_cast<std::uint64_t>(comp.f.degree()));
  if (comp.symbol == 1) {
    BigInt total = 0;
    const BigInt z = centralizer_order(lambda, q);
    for_each_decomposition(lambda, [&](const Partition& mu, const Partition& nu) {
      total += z / (centralizer_order(mu, q) * centralizer_order(nu, q));
    });
    return total;
  }
  if (comp.symbol == -1) {
    std::vector<int> half_mult(lambda.multiplicities().size(), 0);
    for (size_t i = 1; i < lambda.multiplicities().size(); ++i) {
      int r = lambda.multiplicities()[i];
      if (r % 2 != 0) {
        throw Error(ErrorCode::MalformedComponent, "non-square component with an odd dual part in " + lambda.to_string());
      }
      half_mult[i] = r / 2;
    }
    Partition mu = Partition::from_multiplicities(half_mult);
    return centralizer_order(lambda, q) / centralizer_order(mu, q * q);
  }
  throw Error(ErrorCode::MalformedComponent, "component without a residue symbol");
}

}  // namespace

const char* to_string(CountMethod m) {
  switch (m) {
    case CountMethod::Brute: return "brute";
    case CountMethod::Lifted: return "lifted";
    case CountMethod::Closed: return "closed";
  }
  return "?";
}

BigInt count_brute(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  const size_t n = a.n();
  const u64 m = a.modulus().m();
  candidate_count(n * n, m);
  auto slices = value_slices(m);
  auto counts = parallel_map(slices.size(), [&](size_t i) {
    u64 c = 0;
    scan_slice(a, b, slices[i].first, slices[i].second, false, [&](const u64*) { ++c; });
    return c;
  });
  BigInt total = 0;
  for (u64 c : counts) total += c;
  return total;
}

std::vector<ModMatrix> solutions_brute(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  const size_t n = a.n();
  const u64 m = a.modulus().m();
  candidate_count(n * n, m);
  auto slices = value_slices(m);
  auto parts = parallel_map(slices.size(), [&](size_t i) {
    std::vector<ModMatrix> out;
    scan_slice(a, b, slices[i].first, slices[i].second, false,
               [&](const u64* x) { out.push_back(matrix_from(a.modulus(), n, x)); });
    return out;
  });
  std::vector<ModMatrix> all;
  for (auto& part : parts) {
    for (auto& x : part) all.push_back(std::move(x));
  }
  return all;
}

std::optional<ModMatrix> find_solution(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  const size_t n = a.n();
  const Modulus& mod = a.modulus();
  u64 candidates = kMaxCandidates + 1;
  try {
    candidates = candidate_count(n * n, mod.m());
  } catch (const Error&) {
  }
  if (candidates <= kMaxCandidates / 10 || mod.p() == 2 || mod.k() == 1) {
    candidate_count(n * n, mod.m());
    std::optional<ModMatrix> found;
    scan_slice(a, b, 0, mod.m(), true, [&](const u64* x) { found = matrix_from(mod, n, x); });
    return found;
  }
  // depth-first lifting from mod p
  std::vector<ModMatrix> frontier = solutions_brute(a.reduced(1), b.reduced(1));
  std::vector<std::pair<ModMatrix, int>> stack;
  for (auto it = frontier.rbegin(); it != frontier.rend(); ++it) stack.emplace_back(*it, 1);
  while (!stack.empty()) {
    auto [x, level] = stack.back();
    stack.pop_back();
    if (level == mod.k()) return x;
    auto fiber = lift_fiber(a.reduced(level + 1), b.reduced(level + 1), x);
    for (auto it = fiber.lifts.rbegin(); it != fiber.lifts.rend(); ++it) stack.emplace_back(*it, level + 1);
  }
  return std::nullopt;
}

std::optional<ModMatrix> normalize(const ModMatrix& a, const ModMatrix& b) {
  auto x = find_solution(a, b);
  if (!x) return std::nullopt;
  return *x * a;
}

CountReport count_closed_mod_p(const ModMatrix& c_in) {
  const u64 p = c_in.modulus().p();
  if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "closed count needs p odd; use brute force");
  ModMatrix c = c_in.reduced(1);
  CountReport rep;
  rep.method = CountMethod::Closed;
  rep.value = 1;
  for (const auto& comp : primary_decomposition(c).components) {
    ComponentCount cc;
    cc.f = comp.f;
    cc.multiplicity = comp.multiplicity;
    cc.dim = comp.dim();
    cc.symbol = comp.symbol;
    cc.lambda = comp.jordan.lambda;
    cc.count = component_closed(comp, p);
    cc.envelopes = class_envelopes(comp.restricted);
    rep.value *= cc.count;
    rep.components.push_back(std::move(cc));
  }
  rep.envelopes = rank_envelopes(c, c);
  for (auto& e : class_envelopes(c)) rep.envelopes.push_back(std::move(e));
  return rep;
}

std::vector<ModMatrix> solutions_lifted(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  if (a.modulus().p() == 2) throw Error(ErrorCode::EvenCharacteristic, "lifting needs p odd");
  std::vector<ModMatrix> sols = solutions_brute(a.reduced(1), b.reduced(1));
  for (int level = 1; level < a.modulus().k(); ++level) {
    sols = lift_solutions(a.reduced(level + 1), b.reduced(level + 1), sols);
  }
  return sols;
}

CountReport count_lifted(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  const u64 p = a.modulus().p();
  if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "lifting needs p odd");
  const int l = a.modulus().k();
  CountReport rep;
  rep.method = CountMethod::Lifted;
  rep.envelopes = rank_envelopes(a, b);
  std::vector<ModMatrix> sols = solutions_brute(a.reduced(1), b.reduced(1));
  if (l == 1) {
    rep.value = sols.size();
    return rep;
  }
  for (int level = 1; level < l; ++level) {
    const ModMatrix al = a.reduced(level + 1);
    const ModMatrix bl = b.reduced(level + 1);
    const bool last = level + 1 == l;
    BigInt total = 0;
    std::vector<ModMatrix> next;
    for (const auto& x0 : sols) {
      // count-only on the last level to avoid materializing the fiber
      const ModMatrix x = x0.lifted(level + 1);
      const ModMatrix ax = al * x;
      ModMatrix rhs = (mat_inverse(x) * bl - ax).divided_by_p_power(level);
      const ModMatrix c = ax.reduced(1);
      auto sol = sylvester_solve(c, c, rhs, SylvesterSign::Plus);
      ++rep.fibers_checked;
      if (!sol.particular) continue;
      const BigInt fiber = big_pow(BigInt(p), sol.kernel_dim());
      if (!fiber_envelope(c).holds_for(fiber)) ++rep.fibers_over_bound;
      if (last) {
        total += fiber;
      } else {
        auto f = lift_fiber(al, bl, x0);
        for (auto& y : f.lifts) next.push_back(std::move(y));
      }
    }
    if (last) {
      rep.value = total;
    } else {
      sols = std::move(next);
    }
  }
  return rep;
}

std::vector<Envelope> rank_envelopes(const ModMatrix& a, const ModMatrix& b) {
  require_pair(a, b);
  const u64 p = a.modulus().p();
  const int l = a.modulus().k();
  const i64 n = static_cast<i64>(a.n());
  const i64 r = static_cast<i64>(rank_mod_p(a));
  const i64 ri = static_cast<i64>(stable_rank(a));
  const i64 s = static_cast<i64>(rank_mod_p(b));
  const i64 si = static_cast<i64>(stable_rank(b));
  std::vector<Envelope> out;
  const bool mismatch = r != s || ri != si;
  out.push_back(make("thm1.5(1) rank mismatch vanishing", 0, p, 0, mismatch, "r != s or r_inf != s_inf"));
  const bool ok = !mismatch && r > 0;
  Rational e = Rational(l) * (Rational((n - r) * (n - r)) + Rational(ri * ri, 2)) + Rational((r - ri) * (r - ri));
  out.push_back(make("thm1.5(2) rank bound", 1, p, e, ok, "r = s > 0, r_inf = s_inf"));
  out.push_back(make("thm1.5(2) generic", 1, p, Rational(l * (n * n - 2 * n + 2)), ok, "r = s > 0, r_inf = s_inf"));
  return out;
}

std::vector<Envelope> class_envelopes(const ModMatrix& c_in) {
  ModMatrix c = c_in.reduced(1);
  const u64 p = c.modulus().p();
  const i64 n = static_cast<i64>(c.n());
  std::vector<Envelope> out;
  if (p == 2) return out;
  // hypotheses refer to the primary decomposition of C^2, as in the closed count
  FpPoly mp = min_poly(c * c);
  auto factors = poly_factor(mp);
  const bool single = factors.size() == 1;
  const bool nilpotent = single && factors[0].factor == FpPoly::x(static_cast<std::uint32_t>(p));
  const bool regular = single && !nilpotent;
  {
    const i64 d = single ? factors[0].factor.degree() : 1;
    const BigInt q = big_pow(BigInt(p), static_cast<std::uint64_t>(d));
    const Rational ratio(q * q + 1, q * q - 1);
    const i64 floor_part = (n * n) / (2 * d * d);
    out.push_back(make("cor-reg-estimate q-form", ratio, p, Rational(d * floor_part), regular,
                       "minimal polynomial of C^2 is f^k, f != x irreducible"));
    out.push_back(make("cor-reg-estimate p-form", Rational(BigInt(p) * p + 1, BigInt(p) * p - 1), p, Rational(n * n, 2),
                       regular, "minimal polynomial of C^2 is f^k, f != x irreducible"));
    out.push_back(make("cor-reg-estimate 2p-form", 2, p, Rational(n * n, 2 * d), regular,
                       "minimal polynomial of C^2 is f^k, f != x irreducible"));
  }
  {
    i64 sum_d2 = 0;
    if (nilpotent) {
      // d_j = dim ker C^j - dim ker C^{j-1}
      FpMatrix power = FpMatrix::identity(PrimeField{static_cast<std::uint32_t>(p)}, c.n());
      i64 prev = 0;
      for (i64 j = 1; j <= n; ++j) {
        power = power * c.to_fp();
        i64 nul = n - static_cast<i64>(rank(power));
        sum_d2 += (nul - prev) * (nul - prev);
        prev = nul;
      }
    }
    const i64 rk = static_cast<i64>(rank_mod_p(c));
    out.push_back(make("cor-nilp-estimate sum d_j^2", 1, p, Rational(sum_d2), nilpotent, "C nilpotent"));
    out.push_back(make("cor-nilp-estimate rank", 1, p, Rational(rk * rk + (n - rk) * (n - rk)), nilpotent, "C nilpotent"));
  }
  return out;
}

Envelope fiber_envelope(const ModMatrix& c) {
  const i64 n = static_cast<i64>(c.n());
  const i64 r = static_cast<i64>(rank_mod_p(c));
  const i64 ri = static_cast<i64>(stable_rank(c));
  return make("lemma5.1 fiber bound", 1, c.modulus().p(), Rational((n - r) * (n - r)) + Rational(ri * ri, 2), true,
              "per solution mod p^l");
}

std::vector<Envelope> bound_envelopes(const ModMatrix& a, const ModMatrix& b) {
  std::vector<Envelope> out = rank_envelopes(a, b);
  if (a.modulus().k() == 1 && a.modulus().p() != 2) {
    if (auto c = normalize(a, b)) {
      for (auto& e : class_envelopes(*c)) out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<std::string> CountReport::violated_envelopes() const {
  std::vector<std::string> bad;
  for (const auto& e : envelopes) {
    if (e.applicable && !e.holds_for(value)) bad.push_back(e.name);
  }
  for (const auto& comp : components) {
    for (const auto& e : comp.envelopes) {
      if (e.applicable && !e.holds_for(comp.count)) bad.push_back(e.name + " [component " + comp.f.to_string() + "]");
    }
  }
  return bad;
}

nlohmann::json CountReport::to_json() const {
  nlohmann::json j{{"value", value.str()}, {"method", to_string(method)}};
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components) {
    nlohmann::json env = nlohmann::json::array();
    for (const auto& e : c.envelopes) {
      auto ej = e.to_json();
      if (e.applicable) ej["holds"] = e.holds_for(c.count);
      env.push_back(ej);
    }
    comps.push_back({{"f", c.f.to_string()},
                     {"multiplicity", c.multiplicity},
                     {"dim", c.dim},
                     {"symbol", c.symbol},
                     {"lambda", c.lambda.to_string()},
                     {"count", c.count.str()},
                     {"envelopes", env}});
  }
  j["components"] = comps;
  nlohmann::json env = nlohmann::json::array();
  for (const auto& e : envelopes) {
    auto ej = e.to_json();
    if (e.applicable) ej["holds"] = e.holds_for(value);
    env.push_back(ej);
  }
  j["envelopes"] = env;
  if (method == CountMethod::Lifted) {
    j["fibers_checked"] = fibers_checked;
    j["fibers_over_lemma5.1_bound"] = fibers_over_bound;
  }
  return j;
}

}  // namespace kloo
