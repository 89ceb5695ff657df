#pragma once

#include <optional>
#include <vector>

#include "kloo/field_linalg.hpp"
#include "kloo/mod_matrix.hpp"

namespace kloo {

enum class SylvesterSign { Minus, Plus };

struct SylvesterSolution {
  /// One Y with Cl Y -/+ Y Cr = S, absent when the system is inconsistent.
  std::optional<FpMatrix> particular;
  /// n^2 x dim; columns are row-major flattened kernel elements.
  FpMatrix kernel;

  size_t kernel_dim() const { return kernel.cols(); }
};

/// The n^2 x n^2 matrix of Y -> Cl Y -/+ Y Cr on row-major vec(Y).
FpMatrix sylvester_operator(const ModMatrix& cl, const ModMatrix& cr, SylvesterSign sign);

/// Solves Cl Y -/+ Y Cr = S over F_p; inputs are reduced mod p.
SylvesterSolution sylvester_solve(const ModMatrix& cl, const ModMatrix& cr, const ModMatrix& s, SylvesterSign sign);

/// dim {Y : CY + YC = 0} from the flattened operator.
size_t kernel_dim_direct(const ModMatrix& c);

/// dim {Y : CY + YC = 0} from the spectrum of C: sum over eigenvalues a of
/// sum_t d_t(a) d_t(-a), with d_t(a) = dim ker (C-a)^t - dim ker (C-a)^{t-1},
/// computed per irreducible factor f of the characteristic polynomial over F_p[x]/(f).
size_t kernel_dim_by_spectrum(const ModMatrix& c);

/// The eigenvector-only term sum_a d(a) d(-a), d(a) = dim ker (C - a).
/// Agrees with the kernel dimension for semisimple C only.
size_t kernel_dim_eigen_pairing(const ModMatrix& c);

struct LiftFiber {
  /// Whether CY + YC = (X0^{-1}B - AX0)/p^l is solvable mod p.
  bool solvable = false;
  size_t kernel_dim = 0;
  /// All X0 (I + p^l Y) mod p^{l+1}.
  std::vector<ModMatrix> lifts;
};

/// Lifts of one solution X0 of AX = X^{-1}B mod p^l; A, B live mod p^{l+1}.
LiftFiber lift_fiber(const ModMatrix& a, const ModMatrix& b, const ModMatrix& x0);

/// Every solution mod p^{l+1} lying over the given solutions mod p^l, fibers in input order.
std::vector<ModMatrix> lift_solutions(const ModMatrix& a, const ModMatrix& b, const std::vector<ModMatrix>& solutions_mod_pl);

}  // namespace kloo
