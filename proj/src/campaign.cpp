#include "kloo/campaign.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "kloo/counting.hpp"
#include "kloo/enumerate.hpp"
#include "kloo/gaussmat.hpp"
#include "kloo/kloosterman.hpp"
#include "kloo/partitions.hpp"
#include "kloo/sylvester.hpp"

namespace kloo {

namespace {

constexpr size_t kMaxFailureExamples = 3;

std::mt19937_64 suite_rng(u64 seed, u64 salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

ModMatrix random_matrix(const Modulus& mod, size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, mod.m() - 1);
  std::vector<i64> e(n * n);
  for (auto& x : e) x = static_cast<i64>(dist(rng));
  return ModMatrix::from_entries(mod, n, e);
}

std::string pair_text(const ModMatrix& a, const ModMatrix& b) {
  return "n=" + std::to_string(a.n()) + " p=" + std::to_string(a.modulus().p()) + " k=" +
         std::to_string(a.modulus().k()) + " A=" + a.to_text() + " B=" + b.to_text();
}

void tally_envelopes(TallyList& list, const std::vector<Envelope>& envs, const CharSum& s, const std::function<std::string()>& describe) {
  for (const auto& e : envs) {
    if (!e.applicable) continue;
    list.get(e.name).record(e.holds_for(s), describe);
  }
}

void tally_envelopes(TallyList& list, const std::vector<Envelope>& envs, const BigInt& x, const std::function<std::string()>& describe) {
  for (const auto& e : envs) {
    if (!e.applicable) continue;
    list.get(e.name).record(e.holds_for(x), describe);
  }
}

/// Brute evaluation plus its applicable main bounds.
EvalResult brute_with_bounds(const ModMatrix& a, const ModMatrix& b, TallyList& envelopes) {
  EvalResult r = eval_brute(a, b);
  tally_envelopes(envelopes, r.envelopes, *r.sum, [&] { return pair_text(a, b); });
  return r;
}

ModMatrix nilpotent_of_type(const Modulus& fp, const Partition& lambda) {
  const size_t n = static_cast<size_t>(lambda.size());
  ModMatrix j(fp, n);
  size_t offset = 0;
  for (int part : lambda.parts()) {
    for (int i = 0; i + 1 < part; ++i) j.set(offset + i, offset + i + 1, 1);
    offset += static_cast<size_t>(part);
  }
  return j;
}

BigInt centralizer_brute(const ModMatrix& c) {
  const size_t n = c.n();
  const Modulus& mod = c.modulus();
  BigInt count = 0;
  enumerate_slice(n * n, mod.m(), 0, mod.m(), [&](const u64* x) {
    ModMatrix xm = ModMatrix::from_entries(mod, n, std::vector<i64>(x, x + n * n));
    if (mod.is_unit(det(xm)) && xm * c == c * xm) count += 1;
    return true;
  });
  return count;
}

}  // namespace

void Tally::record(bool ok, const std::function<std::string()>& describe) {
  ++total;
  if (ok) {
    ++passed;
  } else if (failures.size() < kMaxFailureExamples) {
    failures.push_back(describe());
  }
}

std::string Tally::line() const {
  std::string s = label + ": " + std::to_string(passed) + "/" + std::to_string(total) + (ok() ? " pass" : " FAIL");
  if (informational) s += " [info]";
  return s;
}

Tally& TallyList::get(const std::string& label, bool informational) {
  auto it = index_.find(label);
  if (it != index_.end()) return items_[it->second];
  index_.emplace(label, items_.size());
  items_.push_back(Tally{label, 0, 0, informational, {}});
  return items_.back();
}

void TallyList::merge(const TallyList& other) {
  for (const auto& t : other.items()) {
    Tally& mine = get(t.label, t.informational);
    mine.passed += t.passed;
    mine.total += t.total;
    for (const auto& f : t.failures) {
      if (mine.failures.size() < kMaxFailureExamples) mine.failures.push_back(f);
    }
  }
}

bool TallyList::ok() const {
  for (const auto& t : items_) {
    if (!t.informational && !t.ok()) return false;
  }
  return true;
}

std::string SuiteReport::text(bool with_envelopes) const {
  std::ostringstream os;
  os << "== " << name << "\n";
  for (const auto& t : checks.items()) {
    os << "  " << t.line() << "\n";
    for (const auto& f : t.failures) os << "    e.g. " << f << "\n";
  }
  if (with_envelopes) {
    for (const auto& t : envelopes.items()) {
      os << "  envelope " << t.line() << "\n";
      for (const auto& f : t.failures) os << "    e.g. " << f << "\n";
    }
  }
  if (skipped > 0) os << "  skipped (budget): " << skipped << "\n";
  return os.str();
}

nlohmann::json SuiteReport::to_json() const {
  auto list = [](const TallyList& l) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : l.items()) {
      arr.push_back({{"label", t.label}, {"passed", t.passed}, {"total", t.total}, {"informational", t.informational},
                     {"failures", t.failures}});
    }
    return arr;
  };
  return {{"suite", name}, {"checks", list(checks)}, {"envelopes", list(envelopes)}, {"skipped", skipped},
          {"pass", checks_ok() && envelopes_ok()}};
}

Budget::Budget(double seconds) {
  if (seconds > 0) {
    deadline_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                                       std::chrono::duration<double>(seconds));
  }
}

bool Budget::expired() const { return deadline_ && std::chrono::steady_clock::now() > *deadline_; }

SuiteReport suite_reduction(const CampaignOptions& opt) {
  SuiteReport rep{"reduction identity (reduced = brute)", {}, {}, 0};
  Budget budget(opt.budget_seconds);
  auto rng = suite_rng(opt.seed, 1);
  auto check = [&](const std::string& label, const ModMatrix& a, const ModMatrix& b) {
    if (budget.expired()) {
      ++rep.skipped;
      return;
    }
    EvalResult brute = brute_with_bounds(a, b, rep.envelopes);
    EvalResult reduced = eval_reduced(a, b);
    rep.checks.get(label).record(reduced.sum->same_value(*brute.sum), [&] { return pair_text(a, b); });
  };
  for (auto [p, k] : {std::pair<u64, int>{3, 2}, {5, 2}, {3, 3}}) {
    const Modulus mod(p, k);
    const std::string label = "n=1 all pairs mod " + std::to_string(mod.m());
    for (u64 a = 0; a < mod.m(); ++a) {
      for (u64 b = 0; b < mod.m(); ++b) {
        check(label, ModMatrix::scalar(mod, 1, static_cast<i64>(a)), ModMatrix::scalar(mod, 1, static_cast<i64>(b)));
      }
    }
  }
  const Modulus m9(3, 2);
  for (u64 a = 0; a < 81; ++a) {
    for (u64 b = 0; b < 81; ++b) {
      ModMatrix am(m9, 2), bm(m9, 2);
      am.set(0, 0, static_cast<i64>(a / 9));
      am.set(1, 1, static_cast<i64>(a % 9));
      bm.set(0, 0, static_cast<i64>(b / 9));
      bm.set(1, 1, static_cast<i64>(b % 9));
      check("n=2 all diagonal pairs mod 9", am, bm);
    }
  }
  for (int t = 0; t < 200; ++t) {
    auto a = random_matrix(m9, 2, rng);
    auto b = random_matrix(m9, 2, rng);
    check("n=2 random pairs mod 9", a, b);
  }
  const Modulus m27(3, 3);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(m27, 2, rng);
    auto b = random_matrix(m27, 2, rng);
    check("n=2 random pairs mod 27", a, b);
  }
  return rep;
}

SuiteReport suite_salie(const CampaignOptions& opt) {
  SuiteReport rep{"Salie evaluation", {}, {}, 0};
  Budget budget(opt.budget_seconds);
  auto rng = suite_rng(opt.seed, 4);
  constexpr int kPerShape = 8;
  const std::vector<std::tuple<size_t, u64, int>> shapes{{1, 3, 2}, {1, 3, 3}, {1, 5, 2}, {1, 5, 3},
                                                         {2, 3, 2}, {2, 3, 3}, {2, 5, 2}};
  for (auto [n, p, k] : shapes) {
    const Modulus mod(p, k);
    int found = 0;
    for (int attempt = 0; attempt < 2000 && found < kPerShape; ++attempt) {
      auto a = random_matrix(mod, n, rng);
      auto b = random_matrix(mod, n, rng);
      const ModMatrix ab = a * b;
      if (!mod.is_unit(det(ab)) || !regular_semisimple_test(ab).regular) continue;
      ++found;
      if (budget.expired()) {
        ++rep.skipped;
        continue;
      }
      auto describe = [&] { return pair_text(a, b); };
      EvalResult s = eval_salie(a, b);
      EvalResult brute = brute_with_bounds(a, b, rep.envelopes);
      const Envelope env = salie_bound(n, p, k);
      rep.checks.get("square-root count <= 2^n").record(s.salie->root_count <= (size_t{1} << n), describe);
      rep.checks.get("|K| <= 2^n p^{kn^2/2}").record(env.holds_for(*brute.sum), describe);
      rep.envelopes.get(env.name).record(env.holds_for(*brute.sum), describe);
      if (k % 2 == 0) {
        rep.checks.get("even k: salie = brute exactly").record(s.sum->same_value(*brute.sum), describe);
      } else {
        const bool both_zero = std::abs(s.value) < 1e-6 && std::abs(brute.value) < 1e-6;
        const bool ratio_ok = both_zero || (std::abs(s.value) >= 1e-6 && near_pth_root_of_unity(brute.value / s.value, p, 1e-6));
        rep.checks.get("odd k: brute / salie is a p-th root of unity").record(ratio_ok, describe);
        rep.checks.get("odd k: Gauss-weighted root sum = brute exactly", true)
            .record(s.salie->gauss_weighted->same_value(*brute.sum), describe);
      }
    }
    if (found < kPerShape) throw Error(ErrorCode::Internal, "could not sample regular semisimple instances");
  }
  return rep;
}

SuiteReport suite_vanishing(const CampaignOptions& opt) {
  SuiteReport rep{"vanishing for mismatched Smith forms", {}, {}, 0};
  Budget budget(opt.budget_seconds);
  auto rng = suite_rng(opt.seed, 5);
  constexpr int kPerShape = 10;
  const std::vector<std::tuple<size_t, u64, int>> shapes{{1, 3, 2}, {1, 3, 3}, {1, 5, 2}, {2, 2, 2},
                                                         {2, 2, 3}, {2, 3, 2}, {2, 3, 3}};
  for (auto [n, p, k] : shapes) {
    const Modulus mod(p, k);
    const int l = k / 2;
    int found = 0;
    for (int attempt = 0; attempt < 5000 && found < kPerShape; ++attempt) {
      auto a = random_matrix(mod, n, rng);
      auto b = random_matrix(mod, n, rng);
      if (truncate(smith_form(a), l) == truncate(smith_form(b), l)) continue;
      ++found;
      if (budget.expired()) {
        ++rep.skipped;
        continue;
      }
      if (a.is_zero() && b.is_zero()) continue;
      EvalResult brute = brute_with_bounds(a, b, rep.envelopes);
      rep.checks.get("K = 0 exactly").record(brute.sum->is_zero(), [&] { return pair_text(a, b); });
    }
    if (found < kPerShape) throw Error(ErrorCode::Internal, "could not sample mismatched Smith forms");
  }
  return rep;
}

SuiteReport suite_counting(const CampaignOptions& opt) {
  SuiteReport rep{"closed count = brute count", {}, {}, 0};
  Budget budget(opt.budget_seconds);
  auto rng = suite_rng(opt.seed, 2);
  auto check = [&](const std::string& label, const ModMatrix& c) {
    if (budget.expired()) {
      ++rep.skipped;
      return;
    }
    auto describe = [&] { return "C=" + c.to_text() + " mod " + std::to_string(c.modulus().p()); };
    CountReport closed = count_closed_mod_p(c);
    BigInt brute = count_brute(c, c);
    rep.checks.get(label).record(closed.value == brute, describe);
    tally_envelopes(rep.envelopes, closed.envelopes, brute, describe);
    for (const auto& comp : closed.components) tally_envelopes(rep.envelopes, comp.envelopes, comp.count, describe);
  };
  for (u64 p : {3, 5}) {
    const Modulus fp(p, 1);
    const std::string label = "exhaustive M_2(F_" + std::to_string(p) + ")";
    enumerate_slice(4, p, 0, p, [&](const u64* x) {
      check(label, ModMatrix::from_entries(fp, 2, std::vector<i64>(x, x + 4)));
      return true;
    });
  }
  const Modulus f3(3, 1);
  for (int t = 0; t < 200; ++t) check("random M_3(F_3)", random_matrix(f3, 3, rng));
  return rep;
}

SuiteReport suite_centralizer(const CampaignOptions& opt) {
  SuiteReport rep{"centralizer orders", {}, {}, 0};
  Budget budget(opt.budget_seconds);
  for (u64 q : {2, 3}) {
    const Modulus fq(q, 1);
    for (int n = 1; n <= 3; ++n) {
      for (const auto& lambda : partitions_of(n)) {
        if (budget.expired()) {
          ++rep.skipped;
          continue;
        }
        BigInt brute = centralizer_brute(nilpotent_of_type(fq, lambda));
        rep.checks.get("centralizer formula, |lambda| <= 3, q=" + std::to_string(q))
            .record(centralizer_order(lambda, BigInt(q)) == brute, [&] { return lambda.to_string(); });
      }
    }
    for (int n = 1; n <= 4; ++n) {
      Rational mass = 0;
      for (const auto& lambda : partitions_of(n)) mass += Rational(gl_order(n, BigInt(q)), centralizer_order(lambda, BigInt(q)));
      const BigInt expected = big_pow(BigInt(q), static_cast<u64>(n * n - n));
      rep.checks.get("nilpotent class mass = q^{n^2-n}, n <= 4, q=" + std::to_string(q))
          .record(mass == Rational(expected), [&] { return "n=" + std::to_string(n); });
    }
  }
  return rep;
}

SuiteReport suite_gauss(const CampaignOptions& opt) {
  SuiteReport rep{"matrix Gauss sums", {}, {}, 0};
  Budget budget(opt.budget_seconds);
  auto rng = suite_rng(opt.seed, 6);
  auto check = [&](const std::string& label, const ModMatrix& s, const ModMatrix& t) {
    if (budget.expired()) {
      ++rep.skipped;
      return;
    }
    auto describe = [&] { return "p=" + std::to_string(s.modulus().p()) + " S=" + s.to_text() + " T=" + t.to_text(); };
    CharSum brute = gauss_brute(s, t);
    GaussClosed closed = gauss_closed(s, t);
    const auto bv = brute.to_complex();
    const auto cv = closed.value();
    const bool numeric = (brute.is_zero() && closed.zero) || std::abs(bv - cv) <= 1e-6 * std::abs(bv);
    rep.checks.get(label).record(numeric && brute.same_value(closed.exact), describe);
    const Envelope env = gauss_bound(t);
    rep.checks.get("|G| <= prop 1.6 envelope").record(env.holds_for(brute), describe);
    rep.envelopes.get(env.name).record(env.holds_for(brute), describe);
  };
  for (u64 p : {3, 5, 7}) {
    const Modulus fp(p, 1);
    for (u64 s = 0; s < p; ++s) {
      for (u64 t = 0; t < p; ++t) {
        check("closed = brute, n=1 exhaustive p=" + std::to_string(p), ModMatrix::scalar(fp, 1, static_cast<i64>(s)),
              ModMatrix::scalar(fp, 1, static_cast<i64>(t)));
      }
    }
  }
  for (u64 p : {3, 5}) {
    const Modulus fp(p, 1);
    for (int i = 0; i < 250; ++i) {
      auto s = random_matrix(fp, 2, rng);
      auto t = random_matrix(fp, 2, rng);
      check("closed = brute, n=2 random p=" + std::to_string(p), s, t);
    }
  }
  const Modulus f3(3, 1);
  enumerate_slice(8, 3, 0, 3, [&](const u64* x) {
    if (budget.expired()) {
      ++rep.skipped;
      return true;
    }
    auto s = ModMatrix::from_entries(f3, 2, std::vector<i64>(x, x + 4));
    auto t = ModMatrix::from_entries(f3, 2, std::vector<i64>(x + 4, x + 8));
    const bool solvable = sylvester_solve(t, t, s, SylvesterSign::Plus).particular.has_value();
    rep.checks.get("G != 0 iff TY+YT=S solvable, n=2 p=3 exhaustive").record(solvable != gauss_brute(s, t).is_zero(), [&] {
      return "S=" + s.to_text() + " T=" + t.to_text();
    });
    return true;
  });
  return rep;
}

SuiteReport suite_sylvester(const CampaignOptions& opt) {
  SuiteReport rep{"Sylvester kernel dimension", {}, {}, 0};
  Budget budget(opt.budget_seconds);
  auto rng = suite_rng(opt.seed, 8);
  auto check = [&](const std::string& label, const ModMatrix& c) {
    if (budget.expired()) {
      ++rep.skipped;
      return;
    }
    auto describe = [&] { return "C=" + c.to_text() + " mod " + std::to_string(c.modulus().p()); };
    const size_t direct = kernel_dim_direct(c);
    rep.checks.get(label).record(kernel_dim_by_spectrum(c) == direct, describe);
    rep.checks.get("literal eigenvalue pairing = direct", true).record(kernel_dim_eigen_pairing(c) == direct, describe);
  };
  const Modulus f3(3, 1);
  enumerate_slice(4, 3, 0, 3, [&](const u64* x) {
    check("spectral = direct, exhaustive M_2(F_3)", ModMatrix::from_entries(f3, 2, std::vector<i64>(x, x + 4)));
    return true;
  });
  const Modulus f5(5, 1);
  for (int t = 0; t < 1000; ++t) check("spectral = direct, random M_3(F_5)", random_matrix(f5, 3, rng));
  return rep;
}

SuiteReport envelope_summary(const std::vector<SuiteReport>& reports) {
  SuiteReport out{"envelope dominance", {}, {}, 0};
  for (const auto& r : reports) {
    out.envelopes.merge(r.envelopes);
    out.skipped += r.skipped;
  }
  return out;
}

std::vector<SuiteReport> run_verify(const std::string& suite, const CampaignOptions& opt) {
  std::vector<SuiteReport> out;
  const bool all = suite == "all" || suite == "bounds";
  if (all || suite == "evaluators") {
    out.push_back(suite_reduction(opt));
    out.push_back(suite_salie(opt));
    out.push_back(suite_vanishing(opt));
  }
  if (all || suite == "counting") {
    out.push_back(suite_counting(opt));
    out.push_back(suite_centralizer(opt));
    out.push_back(suite_sylvester(opt));
  }
  if (all || suite == "gauss") out.push_back(suite_gauss(opt));
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
  if (suite == "bounds") return {envelope_summary(out)};
  return out;
}

namespace {

std::vector<i64> parse_values(const std::vector<std::string>& tokens, const std::string& key) {
  std::vector<i64> out;
  for (const auto& tok : tokens) {
    try {
      const auto dots = tok.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoll(tok));
      } else {
        const i64 lo = std::stoll(tok.substr(0, dots));
        const i64 hi = std::stoll(tok.substr(dots + 2));
        if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty range '" + tok + "'");
        for (i64 v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "bad value '" + tok + "' for " + key);
    }
  }
  return out;
}

}  // namespace

Grid parse_grid(const std::string& spec) {
  Grid g;
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;
  std::string token;
  std::istringstream in(spec);
  std::string segment;
  while (std::getline(in, segment, ';')) {
    std::istringstream seg(segment);
    while (std::getline(seg, token, ',')) {
      token.erase(0, token.find_first_not_of(" \t"));
      token.erase(token.find_last_not_of(" \t") + 1);
      if (token.empty()) continue;
      const auto eq = token.find('=');
      if (eq != std::string::npos) {
        entries.push_back({token.substr(0, eq), {}});
        const std::string v = token.substr(eq + 1);
        if (!v.empty()) entries.back().second.push_back(v);
      } else if (entries.empty()) {
        throw Error(ErrorCode::InvalidArgument, "grid value '" + token + "' without a key");
      } else {
        entries.back().second.push_back(token);
      }
    }
  }
  for (const auto& [key, vals] : entries) {
    if (vals.empty()) throw Error(ErrorCode::InvalidArgument, "grid key '" + key + "' has no values");
    if (key == "n") {
      for (i64 v : parse_values(vals, key)) {
        if (v < 1 || v > 4) throw Error(ErrorCode::InvalidArgument, "n must be in 1..4");
        g.n.push_back(static_cast<int>(v));
      }
    } else if (key == "p") {
      for (i64 v : parse_values(vals, key)) {
        if (v < 2 || v > 1000) throw Error(ErrorCode::InvalidArgument, "p out of range");
        if (is_prime(static_cast<u64>(v))) g.p.push_back(static_cast<u64>(v));
      }
    } else if (key == "k") {
      for (i64 v : parse_values(vals, key)) {
        if (v < 1 || v > 20) throw Error(ErrorCode::InvalidArgument, "k must be in 1..20");
        g.k.push_back(static_cast<int>(v));
      }
    } else if (key == "samples") {
      if (vals.size() == 1 && vals[0] == "all") {
        g.samples.reset();
      } else {
        auto v = parse_values(vals, key);
        if (v.size() != 1 || v[0] < 0) throw Error(ErrorCode::InvalidArgument, "samples must be one count or 'all'");
        g.samples = static_cast<u64>(v[0]);
      }
    } else if (key == "method") {
      if (vals.size() != 1 || (vals[0] != "brute" && vals[0] != "reduced" && vals[0] != "salie" && vals[0] != "auto")) {
        throw Error(ErrorCode::InvalidArgument, "method must be brute, reduced, salie or auto");
      }
      g.method = vals[0];
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown grid key '" + key + "'");
    }
  }
  return g;
}

std::string fmt15(double x) {
  if (x == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string table_csv(const Grid& grid, const CampaignOptions& opt) {
  std::ostringstream out;
  out << "n,p,k,A,B,method,status,re,im,abs,exact_integer,tightest_envelope,envelope_value,ratio\n";
  auto rng = suite_rng(opt.seed, 9);
  Budget budget(opt.budget_seconds);
  for (int n : grid.n) {
    for (u64 p : grid.p) {
      for (int k : grid.k) {
        const Modulus mod(p, k);
        const size_t len = static_cast<size_t>(n * n);
        std::vector<std::pair<ModMatrix, ModMatrix>> pairs;
        if (grid.samples) {
          for (u64 i = 0; i < *grid.samples; ++i) {
            auto a = random_matrix(mod, static_cast<size_t>(n), rng);
            auto b = random_matrix(mod, static_cast<size_t>(n), rng);
            pairs.emplace_back(std::move(a), std::move(b));
          }
        } else {
          candidate_count(2 * len, mod.m(), 100000);
          enumerate_slice(2 * len, mod.m(), 0, mod.m(), [&](const u64* x) {
            pairs.emplace_back(ModMatrix::from_entries(mod, static_cast<size_t>(n), std::vector<i64>(x, x + len)),
                               ModMatrix::from_entries(mod, static_cast<size_t>(n), std::vector<i64>(x + len, x + 2 * len)));
            return true;
          });
        }
        for (const auto& [a, b] : pairs) {
          out << n << ',' << p << ',' << k << ",\"" << a.to_text() << "\",\"" << b.to_text() << "\",";
          std::string method = grid.method;
          if (method == "auto") {
            bool feasible = true;
            try {
              candidate_count(len, mod.m());
            } catch (const Error&) {
              feasible = false;
            }
            method = feasible || k == 1 ? "brute" : "reduced";
          }
          out << method << ',';
          if (budget.expired()) {
            out << "skipped,,,,,,,\n";
            continue;
          }
          std::optional<EvalResult> r;
          std::string status = "ok";
          try {
            if (method == "brute") r = eval_brute(a, b);
            else if (method == "reduced") r = eval_reduced(a, b);
            else r = eval_salie(a, b);
          } catch (const Error& e) {
            status = e.code() == ErrorCode::TooLarge ? "skipped" : "n/a";
          }
          if (!r) {
            out << status << ",,,,,,,\n";
            continue;
          }
          if (!r->phase_resolved) status = "phase-unresolved";
          const double mag = std::abs(r->value);
          out << status << ',' << fmt15(r->value.real()) << ',' << fmt15(r->value.imag()) << ',' << fmt15(mag) << ',';
          if (r->sum) {
            if (auto v = r->sum->as_integer()) out << v->str();
          }
          out << ',';
          const Envelope* best = nullptr;
          for (const auto& e : r->envelopes) {
            if (e.applicable && (best == nullptr || e.value() < best->value())) best = &e;
          }
          if (best) out << best->name << ',' << fmt15(best->value()) << ',' << fmt15(mag / best->value());
          else out << ",,";
          out << '\n';
        }
      }
    }
  }
  return out.str();
}

}  // namespace kloo
