// Thin pybind11 layer: every entry point returns the same JSON text as the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kloo/campaign.hpp"
#include "kloo/counting.hpp"
#include "kloo/gaussmat.hpp"
#include "kloo/kloosterman.hpp"
#include "kloo/partitions.hpp"

namespace py = pybind11;
using namespace kloo;

namespace {

std::string eval_json(const std::string& a, const std::string& b, u64 p, int k, const std::string& method) {
  const Modulus mod(p, k);
  const ModMatrix am = ModMatrix::parse(a, mod);
  const ModMatrix bm = ModMatrix::parse(b, mod);
  EvalResult r = method == "brute"     ? eval_brute(am, bm)
                 : method == "reduced" ? eval_reduced(am, bm)
                 : method == "salie"   ? eval_salie(am, bm)
                                       : throw Error(ErrorCode::InvalidArgument, "unknown method " + method);
  return r.to_json(true, false).dump();
}

std::string count_json(const std::string& a, const std::string& b, u64 p, int l, const std::string& method) {
  const Modulus mod(p, l);
  const ModMatrix am = ModMatrix::parse(a, mod);
  const ModMatrix bm = ModMatrix::parse(b, mod);
  CountReport rep;
  if (method == "brute") {
    rep.value = count_brute(am, bm);
    rep.envelopes = bound_envelopes(am, bm);
  } else if (method == "lifted") {
    rep = count_lifted(am, bm);
  } else if (method == "closed") {
    if (l != 1) throw Error(ErrorCode::PreconditionFailed, "the closed count works mod p");
    if (auto c = normalize(am, bm)) {
      rep = count_closed_mod_p(*c);
    } else {
      rep.value = 0;
      rep.method = CountMethod::Closed;
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown method " + method);
  }
  return rep.to_json().dump();
}

std::string gauss_json(const std::string& s, const std::string& t, u64 p) {
  const Modulus fp(p, 1);
  const ModMatrix sm = ModMatrix::parse(s, fp);
  const ModMatrix tm = ModMatrix::parse(t, fp);
  const CharSum brute = gauss_brute(sm, tm);
  const GaussClosed closed = gauss_closed(sm, tm);
  nlohmann::json j{{"brute", brute.to_json(true)}, {"closed", closed.to_json()}, {"agree", brute.same_value(closed.exact)}};
  return j.dump();
}

std::string bounds_json(const std::string& a, const std::string& b, u64 p, int k) {
  const Modulus mod(p, k);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : main_bounds(ModMatrix::parse(a, mod), ModMatrix::parse(b, mod))) arr.push_back(e.to_json());
  return arr.dump();
}

std::string verify_json(const std::string& suite, u64 seed) {
  CampaignOptions opt;
  opt.seed = seed;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : run_verify(suite, opt)) arr.push_back(r.to_json());
  return arr.dump();
}

}  // namespace

PYBIND11_MODULE(_kloo, m) {
  m.doc() = "Matrix Kloosterman sums over Z/p^kZ";
  py::register_exception<Error>(m, "KlooError", PyExc_ValueError);
  m.def("eval_json", &eval_json, py::arg("a"), py::arg("b"), py::arg("p"), py::arg("k"), py::arg("method") = "brute");
  m.def("count_json", &count_json, py::arg("a"), py::arg("b"), py::arg("p"), py::arg("l") = 1, py::arg("method") = "closed");
  m.def("gauss_json", &gauss_json, py::arg("s"), py::arg("t"), py::arg("p"));
  m.def("bounds_json", &bounds_json, py::arg("a"), py::arg("b"), py::arg("p"), py::arg("k"));
  m.def("verify_json", &verify_json, py::arg("suite"), py::arg("seed") = 42);
  m.def("regular_semisimple", [](const std::string& mtext, u64 p) {
    return regular_semisimple_test(ModMatrix::parse(mtext, Modulus(p, 1))).regular;
  });
  m.def("centralizer_order", [](const std::vector<int>& parts, u64 q) {
    return centralizer_order(Partition(parts), BigInt(q)).str();
  });
}
