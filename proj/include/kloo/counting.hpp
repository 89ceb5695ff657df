#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kloo/envelope.hpp"
#include "kloo/mod_matrix.hpp"
#include "kloo/partitions.hpp"
#include "kloo/primary.hpp"

namespace kloo {

enum class CountMethod { Brute, Lifted, Closed };

const char* to_string(CountMethod m);

struct ComponentCount {
  FpPoly f{2};
  int multiplicity = 0;
  int dim = 0;
  int symbol = 0;
  Partition lambda;
  BigInt count;
  std::vector<Envelope> envelopes;
};

struct CountReport {
  BigInt value;
  CountMethod method = CountMethod::Brute;
  std::vector<ComponentCount> components;
  std::vector<Envelope> envelopes;
  /// Lifting only: fibers examined and fibers above the per-fiber lifting bound.
  u64 fibers_checked = 0;
  u64 fibers_over_bound = 0;

  /// Applicable envelopes (whole count and per component) that fail.
  std::vector<std::string> violated_envelopes() const;
  nlohmann::json to_json() const;
};

/// #{X in GL_n(Z/p^lZ) : XAX = B}, where p^l is the common modulus of A and B.
BigInt count_brute(const ModMatrix& a, const ModMatrix& b);

/// All such X, in enumeration order.
std::vector<ModMatrix> solutions_brute(const ModMatrix& a, const ModMatrix& b);

/// One solution X of XAX = B, or nothing when none exists.
std::optional<ModMatrix> find_solution(const ModMatrix& a, const ModMatrix& b);

/// C = XA for a solution X, so that N*(A,B) = N*(C,C); nothing when N*(A,B) = 0.
std::optional<ModMatrix> normalize(const ModMatrix& a, const ModMatrix& b);

/// N*(C,C;p) from the primary decomposition of C^2 and the partition formulas (p odd).
CountReport count_closed_mod_p(const ModMatrix& c);

/// Solutions mod p by enumeration, then level-by-level lifting (p odd).
CountReport count_lifted(const ModMatrix& a, const ModMatrix& b);

/// All solutions modulo p^l obtained by lifting from p.
std::vector<ModMatrix> solutions_lifted(const ModMatrix& a, const ModMatrix& b);

/// Envelopes for N*(A,B;p^l): the rank bounds and, at l = 1, the per-class estimates for C.
std::vector<Envelope> bound_envelopes(const ModMatrix& a, const ModMatrix& b);

/// Rank-based envelopes p^{l((n-r)^2+r_inf^2/2)+(r-r_inf)^2} and p^{l(n^2-2n+2)}.
std::vector<Envelope> rank_envelopes(const ModMatrix& a, const ModMatrix& b);

/// Estimates for n(C,C;p) when C is nilpotent or has minimal polynomial f^k, f != x.
std::vector<Envelope> class_envelopes(const ModMatrix& c);

/// Per-fiber lifting bound p^{(n-r)^2 + r_inf^2/2} with r, r_inf the ranks of C.
Envelope fiber_envelope(const ModMatrix& c);

}  // namespace kloo
