#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kloo/charsum.hpp"
#include "kloo/envelope.hpp"
#include "kloo/mod_matrix.hpp"

namespace kloo {

enum class EvalMethod { Brute, Reduced, Salie };

const char* to_string(EvalMethod m);

struct SalieData {
  /// Square roots Y of AB modulo p^k (one per root mod p).
  size_t root_count = 0;
  /// sum_Y e(2 Tr Y / p^k).
  CharSum root_sum;
  /// The value is p^{scale_twice/2} * root_sum, times an undetermined p-th root of unity for odd k.
  u64 scale_twice = 0;
  /// Odd k only: p^{(k-1)n^2/2} sum_Y G(0, Y mod p) e(2 Tr Y / p^k), with G the matrix Gauss sum.
  std::optional<CharSum> gauss_weighted;
};

struct EvalResult {
  EvalMethod method = EvalMethod::Brute;
  ModMatrix a;
  ModMatrix b;
  /// Exact value; absent only for the Salie form at odd k.
  std::optional<CharSum> sum;
  std::complex<double> value;
  /// False when the value is known only up to a p-th root of unity.
  bool phase_resolved = true;
  std::optional<SalieData> salie;
  std::vector<Envelope> envelopes;
  std::vector<std::string> notes;
  double seconds = 0;

  size_t n() const { return a.n(); }
  const Modulus& modulus() const { return a.modulus(); }
  /// Applicable envelopes that |value| exceeds (exact when `sum` is present).
  std::vector<std::string> violated_envelopes() const;
  nlohmann::json to_json(bool exact_coeffs = true, bool timing = true) const;
};

/// Sum over all X in GL_n(Z/p^kZ); A and B share the modulus p^k.
EvalResult eval_brute(const ModMatrix& a, const ModMatrix& b);

/// Sum restricted to XAX = B mod p^{floor(k/2)}, with the Gauss-sum weight for odd k (k > 1).
EvalResult eval_reduced(const ModMatrix& a, const ModMatrix& b);

/// p^{kn^2/2} sum_Y e(2 Tr Y/p^k) over square roots Y of AB (p odd, k >= 2,
/// det(AB) a unit, AB regular semisimple mod p).
EvalResult eval_salie(const ModMatrix& a, const ModMatrix& b);

struct SemisimpleTest {
  bool regular = false;
  FpPoly char_poly{2};
  /// gcd of the characteristic polynomial and its derivative.
  FpPoly witness{2};
};

/// Squarefree characteristic polynomial mod p.
SemisimpleTest regular_semisimple_test(const ModMatrix& m);

/// The bounds for |K_n(A,B;p^k)| with applicability flags; throws BothZero if A = B = 0 mod p^k.
std::vector<Envelope> main_bounds(const ModMatrix& a, const ModMatrix& b);

/// 2^n p^{kn^2/2}.
Envelope salie_bound(size_t n, u64 p, int k);

/// Whether z is within tol of some p-th root of unity.
bool near_pth_root_of_unity(std::complex<double> z, u64 p, double tol);

}  // namespace kloo
