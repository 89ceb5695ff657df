#pragma once

#include <vector>

#include "kloo/field_linalg.hpp"
#include "kloo/fppoly.hpp"
#include "kloo/mod_matrix.hpp"
#include "kloo/partitions.hpp"

namespace kloo {

/// Jordan data of one primary component.
struct JordanType {
  Partition lambda;
  /// deg f: lambda partitions dim / deg f.
  int field_degree = 1;
  /// d_1 >= d_2 >= ..., the dual of lambda.
  std::vector<int> dual_increments;
};

/// One factor f^k of the minimal polynomial of C^2 with V = ker f(C^2)^k.
struct PrimaryComponent {
  FpPoly f;
  int multiplicity = 0;
  /// n x dim, columns span V.
  FpMatrix basis;
  /// C restricted to V, in the basis above (mod p).
  ModMatrix restricted;
  /// (x/f) for odd p; 0 when f = x or p = 2.
  int symbol = 0;
  JordanType jordan;

  int dim() const { return static_cast<int>(basis.cols()); }
  bool nilpotent() const { return f == FpPoly::x(f.p()); }
};

struct PrimaryDecomposition {
  FpPoly min_poly_of_square;
  std::vector<PrimaryComponent> components;
  /// Columns are the concatenated component bases; invertible.
  FpMatrix change_of_basis;
};

/// Splits F_p^n along the irreducible factors of the minimal polynomial of C^2.
PrimaryDecomposition primary_decomposition(const ModMatrix& c);

/// Partition recovered from kernel dimensions: for f = x from dim ker C^j of the
/// restricted matrix itself, otherwise from dim ker f(C^2)^j / deg f.
JordanType jordan_type(const PrimaryComponent& component);

}  // namespace kloo
