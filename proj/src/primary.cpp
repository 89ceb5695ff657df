#include "kloo/primary.hpp"

namespace kloo {

namespace {

int nullity(const FpMatrix& m) { return static_cast<int>(m.cols() - rank(m)); }

std::vector<int> kernel_increments(const FpMatrix& d, int max_power) {
  std::vector<int> inc;
  int prev = 0;
  FpMatrix power = FpMatrix::identity(d.field(), d.rows());
  for (int t = 1; t <= max_power; ++t) {
    power = power * d;
    int cur = nullity(power);
    if (cur == prev) break;
    inc.push_back(cur - prev);
    prev = cur;
  }
  return inc;
}

}  // namespace

JordanType jordan_type(const PrimaryComponent& component) {
  JordanType jt;
  const int dim = component.dim();
  FpMatrix c = component.restricted.to_fp();
  if (component.nilpotent()) {
    jt.field_degree = 1;
    jt.dual_increments = kernel_increments(c, dim);
  } else {
    jt.field_degree = component.f.degree();
    FpMatrix d = eval_poly(component.f, c * c);
    auto inc = kernel_increments(d, dim);
    for (int& x : inc) {
      if (x % jt.field_degree != 0) {
        throw Error(ErrorCode::MalformedComponent, "kernel increment not divisible by deg f");
      }
      x /= jt.field_degree;
    }
    jt.dual_increments = inc;
  }
  int total = 0;
  for (int x : jt.dual_increments) total += x;
  if (total * jt.field_degree != dim) {
    throw Error(ErrorCode::MalformedComponent, "kernel increments do not exhaust the component");
  }
  jt.lambda = Partition::from_dual(jt.dual_increments);
  return jt;
}

PrimaryDecomposition primary_decomposition(const ModMatrix& c_in) {
  ModMatrix c = c_in.reduced(1);
  const auto p = static_cast<std::uint32_t>(c.modulus().p());
  const size_t n = c.n();
  FpMatrix cf = c.to_fp();
  FpMatrix sq = cf * cf;
  ModMatrix sq_mod = ModMatrix::from_fp(c.modulus(), sq);

  PrimaryDecomposition out{min_poly(sq_mod), {}, FpMatrix(PrimeField{p}, n, n)};
  size_t col = 0;
  for (const auto& [f, mult] : poly_factor(out.min_poly_of_square)) {
    FpMatrix proj = eval_poly(pow(f, static_cast<std::uint64_t>(mult)), sq);
    FpMatrix basis = nullspace(proj);
    const size_t dim = basis.cols();
    // C|_V: solve basis * R = C * basis column by column
    FpMatrix image = cf * basis;
    FpMatrix restricted(PrimeField{p}, dim, dim);
    for (size_t j = 0; j < dim; ++j) {
      std::vector<std::uint32_t> rhs(n);
      for (size_t i = 0; i < n; ++i) rhs[i] = image(i, j);
      auto x = solve(basis, rhs);
      if (!x) throw Error(ErrorCode::Internal, "component is not C-invariant");
      for (size_t i = 0; i < dim; ++i) restricted(i, j) = (*x)[i];
    }
    for (size_t j = 0; j < dim; ++j, ++col) {
      if (col >= n) throw Error(ErrorCode::Internal, "component dimensions exceed n");
      for (size_t i = 0; i < n; ++i) out.change_of_basis(i, col) = basis(i, j);
    }
    PrimaryComponent comp{f, mult, basis, ModMatrix::from_fp(c.modulus(), restricted), 0, {}};
    if (p != 2 && !comp.nilpotent()) comp.symbol = residue_symbol(FpPoly::x(p), f);
    comp.jordan = jordan_type(comp);
    out.components.push_back(std::move(comp));
  }
  if (col != n) throw Error(ErrorCode::Internal, "component dimensions do not sum to n");
  return out;
}

}  // namespace kloo
