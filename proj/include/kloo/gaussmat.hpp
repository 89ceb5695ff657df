#pragma once

#include <complex>

#include <json.hpp>

#include "kloo/charsum.hpp"
#include "kloo/envelope.hpp"
#include "kloo/mod_matrix.hpp"

namespace kloo {

/// sum over U in M_n(F_p) of e(Tr(SU + TU^2)/p), exactly.
CharSum gauss_brute(const ModMatrix& s, const ModMatrix& t);

/// Closed evaluation legendre * g_p^{gp_power} * p^{p_power} * e(phase_num/p), or zero.
struct GaussClosed {
  bool zero = false;
  int legendre = 1;
  u64 phase_num = 0;
  int gp_power = 0;
  int p_power = 0;
  /// Rank of Q(U) = Tr(TU^2) and dim {Y : TY + YT = 0}; rank + kernel = n^2.
  int rank = 0;
  int kernel_dim = 0;
  /// The same number in Z[e(1/p)].
  CharSum exact;
  /// legendre * e(phase/p) * p^{n^2 - rank/2}, the evaluation without the Gauss-sum phase.
  std::complex<double> literal;

  std::complex<double> value() const { return exact.to_complex(); }
  /// True when the evaluation without the phase of g_p disagrees with the exact one.
  bool literal_phase_mismatch() const;
  nlohmann::json to_json() const;
};

/// Riesz solvability of TY + YT = S, diagonalization of Q, and g_p (p odd).
GaussClosed gauss_closed(const ModMatrix& s, const ModMatrix& t);

/// p^{(n-r)^2 + r_inf^2/2} with r, r_inf the rank and stable rank of T mod p.
Envelope gauss_bound(const ModMatrix& t);

/// |G| = p^{(n^2 + K)/2}, K = dim {Y : TY + YT = 0}, whenever the sum is nonzero.
Envelope gauss_magnitude(const ModMatrix& t);

}  // namespace kloo
