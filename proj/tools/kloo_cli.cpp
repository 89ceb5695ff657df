// Command-line front end: eval, count, gauss, bounds, verify, table.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "kloo/campaign.hpp"
#include "kloo/counting.hpp"
#include "kloo/gaussmat.hpp"
#include "kloo/kloosterman.hpp"

using namespace kloo;
using nlohmann::json;

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitPrecondition = 4;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ModulusMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::FieldMismatch:
      return kExitParse;
    case ErrorCode::TooLarge:
      return kExitTooLarge;
    case ErrorCode::NotAUnit:
    case ErrorCode::NotInvertible:
    case ErrorCode::EvenCharacteristic:
    case ErrorCode::NotRegularSemisimple:
    case ErrorCode::PreconditionFailed:
    case ErrorCode::BothZero:
    case ErrorCode::MalformedComponent:
      return kExitPrecondition;
    case ErrorCode::InexactDivision:
    case ErrorCode::Internal:
      return kExitVerifyFailure;
  }
  return kExitVerifyFailure;
}

/// Floats rounded to 15 significant digits so output does not carry rounding noise.
void round_floats(json& j) {
  if (j.is_number_float()) {
    j = std::stod(fmt15(j.get<double>()));
  } else if (j.is_structured()) {
    for (auto& child : j) round_floats(child);
  }
}

void print_json(json j) {
  round_floats(j);
  std::cout << j.dump(2) << "\n";
}

struct InstanceFlags {
  std::optional<int> n;
  u64 p = 0;
  int k = 1;
  std::string a;
  std::string b;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f, bool need_pair) {
  cmd->add_option("--n", f.n, "matrix size (inferred from --a when omitted)");
  cmd->add_option("--p", f.p, "prime")->required();
  cmd->add_option("--k", f.k, "exponent of the modulus p^k")->check(CLI::Range(1, 30));
  auto* a = cmd->add_option("--a", f.a, "matrix A as \"r,c;r,c\"");
  auto* b = cmd->add_option("--b", f.b, "matrix B as \"r,c;r,c\"");
  if (need_pair) {
    a->required();
    b->required();
  }
}

ModMatrix parse_matrix(const std::string& text, const Modulus& mod, const std::optional<int>& n, const char* what) {
  ModMatrix m = ModMatrix::parse(text, mod);
  if (n && static_cast<size_t>(*n) != m.n()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " is " + std::to_string(m.n()) + "x" + std::to_string(m.n()) +
                                                  ", expected n=" + std::to_string(*n));
  }
  return m;
}

Modulus make_modulus(u64 p, int k) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  return Modulus(p, k);
}

json eval_error(EvalMethod m, const Error& e) { return {{"method", to_string(m)}, {"error", e.what()}}; }

std::string csv_row(const EvalResult& r) {
  std::ostringstream os;
  os << r.n() << ',' << r.modulus().p() << ',' << r.modulus().k() << ",\"" << r.a.to_text() << "\",\"" << r.b.to_text() << "\","
     << to_string(r.method) << ',' << fmt15(r.value.real()) << ',' << fmt15(r.value.imag()) << ',' << fmt15(std::abs(r.value))
     << ',' << (r.phase_resolved ? "exact" : "up-to-root-of-unity");
  return os.str();
}

int cmd_eval(const InstanceFlags& f, const std::string& method, const std::string& format) {
  const Modulus mod = make_modulus(f.p, f.k);
  const ModMatrix a = parse_matrix(f.a, mod, f.n, "A");
  const ModMatrix b = parse_matrix(f.b, mod, a.n(), "B");
  auto run = [&](EvalMethod m) {
    switch (m) {
      case EvalMethod::Brute: return eval_brute(a, b);
      case EvalMethod::Reduced: return eval_reduced(a, b);
      case EvalMethod::Salie: return eval_salie(a, b);
    }
    throw Error(ErrorCode::Internal, "unknown method");
  };
  if (method != "all") {
    const EvalMethod m = method == "brute" ? EvalMethod::Brute : method == "reduced" ? EvalMethod::Reduced : EvalMethod::Salie;
    EvalResult r = run(m);
    if (format == "csv") {
      std::cout << "n,p,k,A,B,method,re,im,abs,phase\n" << csv_row(r) << "\n";
    } else {
      print_json(r.to_json());
    }
    return 0;
  }

  std::vector<std::optional<EvalResult>> results;
  json out;
  out["results"] = json::array();
  for (EvalMethod m : {EvalMethod::Brute, EvalMethod::Reduced, EvalMethod::Salie}) {
    try {
      results.push_back(run(m));
      out["results"].push_back(results.back()->to_json());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Internal || e.code() == ErrorCode::InexactDivision) throw;
      results.emplace_back();
      out["results"].push_back(eval_error(m, e));
    }
  }
  json verdicts = json::object();
  bool agree = true;
  const auto& brute = results[0];
  if (brute && results[1]) {
    const bool same = brute->sum->same_value(*results[1]->sum);
    verdicts["brute=reduced"] = same;
    agree = agree && same;
  }
  if (brute && results[2]) {
    const auto& s = *results[2];
    bool same;
    if (s.phase_resolved) {
      same = brute->sum->same_value(*s.sum);
      verdicts["brute=salie"] = same;
    } else {
      const bool both_zero = std::abs(s.value) < 1e-6 && std::abs(brute->value) < 1e-6;
      same = both_zero || (std::abs(s.value) >= 1e-6 && near_pth_root_of_unity(brute->value / s.value, f.p, 1e-6));
      verdicts["brute/salie is a p-th root of unity"] = same;
      verdicts["brute=gauss-weighted salie"] = brute->sum->same_value(*s.salie->gauss_weighted);
    }
    agree = agree && same;
  }
  out["verdicts"] = verdicts;
  out["agree"] = agree;
  if (format == "csv") {
    std::cout << "n,p,k,A,B,method,re,im,abs,phase\n";
    for (const auto& r : results) {
      if (r) std::cout << csv_row(*r) << "\n";
    }
  } else {
    print_json(out);
  }
  return 0;
}

int cmd_count(const InstanceFlags& f, int level, const std::string& c_text, const std::string& method) {
  const Modulus mod = make_modulus(f.p, level);
  ModMatrix a(mod, 1), b(mod, 1);
  if (!c_text.empty()) {
    a = parse_matrix(c_text, mod, f.n, "C");
    b = a;
  } else {
    if (f.a.empty() || f.b.empty()) throw Error(ErrorCode::InvalidArgument, "count needs --c or both --a and --b");
    a = parse_matrix(f.a, mod, f.n, "A");
    b = parse_matrix(f.b, mod, a.n(), "B");
  }
  CountReport rep;
  if (method == "brute") {
    rep.value = count_brute(a, b);
    rep.method = CountMethod::Brute;
    rep.envelopes = bound_envelopes(a, b);
  } else if (method == "lifted") {
    rep = count_lifted(a, b);
  } else {
    if (level != 1) throw Error(ErrorCode::PreconditionFailed, "the closed count works mod p (use --l 1)");
    if (auto c = normalize(a, b)) {
      rep = count_closed_mod_p(*c);
    } else {
      rep.value = 0;
      rep.method = CountMethod::Closed;
      rep.envelopes = rank_envelopes(a, b);
    }
  }
  json j = rep.to_json();
  j["instance"] = {{"n", a.n()}, {"p", f.p}, {"l", level}, {"A", a.to_text()}, {"B", b.to_text()}};
  print_json(j);
  return 0;
}

int cmd_gauss(u64 p, const std::optional<int>& n, const std::string& s_text, const std::string& t_text, const std::string& method) {
  const Modulus fp = make_modulus(p, 1);
  const ModMatrix s = parse_matrix(s_text, fp, n, "S");
  const ModMatrix t = parse_matrix(t_text, fp, s.n(), "T");
  json j;
  j["instance"] = {{"n", s.n()}, {"p", p}, {"S", s.to_text()}, {"T", t.to_text()}};
  std::optional<CharSum> brute;
  std::optional<GaussClosed> closed;
  if (method != "closed") brute = gauss_brute(s, t);
  if (method != "brute") closed = gauss_closed(s, t);
  const CharSum& value = brute ? *brute : closed->exact;
  const json value_json = value.to_json(true);
  for (auto& [key, v] : value_json.items()) j[key] = v;
  if (closed) j["closed"] = closed->to_json();
  if (brute && closed) j["agree"] = brute->same_value(closed->exact);
  json env = json::array();
  for (const Envelope& e : {gauss_bound(t), gauss_magnitude(t)}) {
    json ej = e.to_json();
    ej["holds"] = e.holds_for(value);
    env.push_back(ej);
  }
  j["envelopes"] = env;
  print_json(j);
  return 0;
}

int cmd_bounds(const InstanceFlags& f, bool evaluate) {
  const Modulus mod = make_modulus(f.p, f.k);
  const ModMatrix a = parse_matrix(f.a, mod, f.n, "A");
  const ModMatrix b = parse_matrix(f.b, mod, a.n(), "B");
  json j;
  j["instance"] = {{"n", a.n()}, {"p", f.p}, {"k", f.k}, {"A", a.to_text()}, {"B", b.to_text()}};
  std::optional<EvalResult> r;
  if (evaluate) {
    r = eval_brute(a, b);
    j["abs"] = std::abs(r->value);
  }
  json env = json::array();
  for (const auto& e : main_bounds(a, b)) {
    json ej = e.to_json();
    if (r && e.applicable) ej["holds"] = e.holds_for(*r->sum);
    env.push_back(ej);
  }
  j["envelopes"] = env;
  print_json(j);
  return 0;
}

int cmd_verify(const std::string& suite, const CampaignOptions& opt, const std::string& format) {
  const auto reports = run_verify(suite, opt);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.checks_ok() && r.envelopes_ok();
  if (format == "json") {
    json j = json::array();
    for (const auto& r : reports) j.push_back(r.to_json());
    std::cout << json{{"suites", j}, {"seed", opt.seed}, {"pass", ok}}.dump(2) << "\n";
  } else {
    for (const auto& r : reports) std::cout << r.text();
    std::cout << (ok ? "verify: PASS" : "verify: FAIL") << "\n";
  }
  return ok ? 0 : kExitVerifyFailure;
}

int cmd_table(const std::string& grid_spec, const CampaignOptions& opt, const std::string& out_path) {
  const Grid grid = parse_grid(grid_spec);
  const std::string csv = table_csv(grid, opt);
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << out_path << "\n";
    return kExitVerifyFailure;
  }
  out << csv;
  return out.good() ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix Kloosterman sums over Z/p^kZ: evaluation, counting, Gauss sums and bound checks"};
  app.require_subcommand(1);

  InstanceFlags inst;
  std::string method = "brute";
  std::string format = "json";

  auto* eval = app.add_subcommand("eval", "evaluate K_n(A,B;p^k)");
  add_instance_flags(eval, inst, true);
  eval->add_option("--method", method)->check(CLI::IsMember({"brute", "reduced", "salie", "all"}));
  eval->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* count = app.add_subcommand("count", "count X with XAX = B mod p^l");
  InstanceFlags cinst;
  int level = 1;
  std::string c_text;
  std::string count_method = "closed";
  count->add_option("--n", cinst.n);
  count->add_option("--p", cinst.p)->required();
  count->add_option("--l", level, "level l of the modulus p^l")->check(CLI::Range(1, 30));
  count->add_option("--c", c_text, "count N*(C,C)");
  count->add_option("--a", cinst.a);
  count->add_option("--b", cinst.b);
  count->add_option("--method", count_method)->check(CLI::IsMember({"brute", "closed", "lifted"}));

  auto* gauss = app.add_subcommand("gauss", "matrix Gauss sum over M_n(F_p)");
  u64 gp = 0;
  std::optional<int> gn;
  std::string s_text, t_text;
  std::string gauss_method = "both";
  gauss->add_option("--p", gp)->required();
  gauss->add_option("--n", gn);
  gauss->add_option("--s", s_text)->required();
  gauss->add_option("--t", t_text)->required();
  gauss->add_option("--method", gauss_method)->check(CLI::IsMember({"brute", "closed", "both"}));

  auto* bounds = app.add_subcommand("bounds", "envelope table for |K_n(A,B;p^k)|");
  InstanceFlags binst;
  bool evaluate = false;
  add_instance_flags(bounds, binst, true);
  bounds->add_flag("--eval", evaluate, "also evaluate by brute force and mark each envelope");

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  std::string suite = "all";
  CampaignOptions opt;
  std::string verify_format = "text";
  verify->add_option("--suite", suite)->check(CLI::IsMember({"evaluators", "counting", "gauss", "bounds", "all"}));
  verify->add_option("--seed", opt.seed);
  verify->add_option("--budget-seconds", opt.budget_seconds)->check(CLI::NonNegativeNumber);
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json"}));

  auto* table = app.add_subcommand("table", "CSV table over a parameter grid");
  std::string grid_spec;
  std::string out_path;
  CampaignOptions topt;
  table->add_option("--grid", grid_spec, "e.g. \"n=2;p=3,5;k=1..3;samples=20\"")->required();
  table->add_option("--seed", topt.seed);
  table->add_option("--budget-seconds", topt.budget_seconds)->check(CLI::NonNegativeNumber);
  table->add_option("--out", out_path, "output CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*eval) return cmd_eval(inst, method, format);
    if (*count) return cmd_count(cinst, level, c_text, count_method);
    if (*gauss) return cmd_gauss(gp, gn, s_text, t_text, gauss_method);
    if (*bounds) return cmd_bounds(binst, evaluate);
    if (*verify) return cmd_verify(suite, opt, verify_format);
    if (*table) return cmd_table(grid_spec, topt, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
  return 0;
}
