#include "kloo/sylvester.hpp"

#include "kloo/fq.hpp"

namespace kloo {

namespace {

constexpr u64 kMaxFiberLifts = 10'000'000;

std::uint32_t prime_of(const ModMatrix& m) { return static_cast<std::uint32_t>(m.modulus().p()); }

FqMatrix over_extension(const ModMatrix& c, const FqFieldPtr& field) {
  const size_t n = c.n();
  const u64 p = c.modulus().p();
  FqMatrix m(ExtField{field}, n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m(i, j) = FqElem::from_int(field, static_cast<i64>(c(i, j) % p));
  }
  return m;
}

/// d_t(a) = dim ker (M - a)^t - dim ker (M - a)^{t-1} for t = 1..n.
std::vector<size_t> kernel_layers(const FqMatrix& m, const FqElem& a) {
  const size_t n = m.rows();
  FqMatrix shifted = m - FqMatrix::identity(m.field(), n).scaled(a);
  std::vector<size_t> layers;
  FqMatrix power = FqMatrix::identity(m.field(), n);
  size_t prev = 0;
  for (size_t t = 1; t <= n; ++t) {
    power = power * shifted;
    size_t nul = n - rank(power);
    layers.push_back(nul - prev);
    if (nul == prev) break;
    prev = nul;
  }
  return layers;
}

template <class Term>
size_t spectral_sum(const ModMatrix& c, Term term) {
  if (c.modulus().p() == 2) throw Error(ErrorCode::EvenCharacteristic, "kernel dimension formula needs p odd");
  size_t total = 0;
  for (const auto& [f, mult] : poly_factor(char_poly_mod_p(c))) {
    (void)mult;
    auto field = FqField::make(f);
    FqMatrix m = over_extension(c, field);
    FqElem alpha = FqElem::generator(field);
    total += static_cast<size_t>(f.degree()) * term(kernel_layers(m, alpha), kernel_layers(m, -alpha));
  }
  return total;
}

}  // namespace

FpMatrix sylvester_operator(const ModMatrix& cl, const ModMatrix& cr, SylvesterSign sign) {
  if (cl.n() != cr.n()) throw Error(ErrorCode::DimensionMismatch, "Sylvester coefficients differ in size");
  if (cl.modulus().p() != cr.modulus().p()) throw Error(ErrorCode::ModulusMismatch, "Sylvester coefficients over different primes");
  const size_t n = cl.n();
  const std::uint32_t p = prime_of(cl);
  PrimeField fp{p};
  FpMatrix op(fp, n * n, n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const size_t r = i * n + j;
      for (size_t t = 0; t < n; ++t) {
        op(r, t * n + j) = fp.add(op(r, t * n + j), static_cast<std::uint32_t>(cl(i, t) % p));
        auto v = static_cast<std::uint32_t>(cr(t, j) % p);
        op(r, i * n + t) = sign == SylvesterSign::Plus ? fp.add(op(r, i * n + t), v) : fp.sub(op(r, i * n + t), v);
      }
    }
  }
  return op;
}

SylvesterSolution sylvester_solve(const ModMatrix& cl, const ModMatrix& cr, const ModMatrix& s, SylvesterSign sign) {
  if (s.n() != cl.n()) throw Error(ErrorCode::DimensionMismatch, "right-hand side differs in size");
  FpMatrix op = sylvester_operator(cl, cr, sign);
  const size_t n = cl.n();
  const std::uint32_t p = prime_of(cl);
  std::vector<std::uint32_t> rhs(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) rhs[i * n + j] = static_cast<std::uint32_t>(s(i, j) % p);
  }
  SylvesterSolution out{std::nullopt, nullspace(op)};
  if (auto y = solve(op, rhs)) {
    FpMatrix ym(PrimeField{p}, n, n);
    for (size_t r = 0; r < n * n; ++r) ym(r / n, r % n) = (*y)[r];
    out.particular = ym;
  }
  return out;
}

size_t kernel_dim_direct(const ModMatrix& c) {
  FpMatrix op = sylvester_operator(c, c, SylvesterSign::Plus);
  return op.cols() - rank(op);
}

size_t kernel_dim_by_spectrum(const ModMatrix& c) {
  return spectral_sum(c, [](const std::vector<size_t>& plus, const std::vector<size_t>& minus) {
    size_t s = 0;
    for (size_t t = 0; t < std::min(plus.size(), minus.size()); ++t) s += plus[t] * minus[t];
    return s;
  });
}

size_t kernel_dim_eigen_pairing(const ModMatrix& c) {
  return spectral_sum(c, [](const std::vector<size_t>& plus, const std::vector<size_t>& minus) {
    return plus.front() * minus.front();
  });
}

LiftFiber lift_fiber(const ModMatrix& a, const ModMatrix& b, const ModMatrix& x0) {
  const Modulus& target = a.modulus();
  if (!(b.modulus() == target)) throw Error(ErrorCode::ModulusMismatch, "A and B must share the modulus");
  const int l = target.k() - 1;
  if (l < 1) throw Error(ErrorCode::InvalidArgument, "lifting needs A, B modulo p^{l+1} with l >= 1");
  if (x0.modulus().p() != target.p() || x0.modulus().k() > target.k()) {
    throw Error(ErrorCode::ModulusMismatch, "X0 must live modulo a smaller power of the same prime");
  }
  const ModMatrix x = x0.modulus().k() == target.k() ? x0 : x0.lifted(target.k());
  const ModMatrix ax = a * x;
  ModMatrix rhs_full = mat_inverse(x) * b - ax;
  ModMatrix rhs(Modulus(target.p(), 1), a.n());
  try {
    rhs = rhs_full.divided_by_p_power(l);
  } catch (const Error&) {
    throw Error(ErrorCode::PreconditionFailed, "X0 does not solve AX = X^{-1}B modulo p^l");
  }
  const ModMatrix c = ax.reduced(1);
  SylvesterSolution sol = sylvester_solve(c, c, rhs, SylvesterSign::Plus);
  LiftFiber fiber;
  fiber.kernel_dim = sol.kernel_dim();
  if (!sol.particular) return fiber;
  fiber.solvable = true;

  const u64 p = target.p();
  const size_t n = a.n();
  const u64 count = checked_pow(p, static_cast<unsigned>(fiber.kernel_dim), kMaxFiberLifts);
  const i64 pl = static_cast<i64>(checked_pow(p, static_cast<unsigned>(l)));
  std::vector<u64> digits(fiber.kernel_dim, 0);
  const ModMatrix id = ModMatrix::identity(target, n);
  fiber.lifts.reserve(count);
  for (u64 idx = 0; idx < count; ++idx) {
    ModMatrix y(target, n);
    for (size_t r = 0; r < n * n; ++r) {
      u64 v = (*sol.particular)(r / n, r % n);
      for (size_t t = 0; t < digits.size(); ++t) v += digits[t] * sol.kernel(r, t);
      y.set(r / n, r % n, static_cast<i64>(v % p) * pl);
    }
    fiber.lifts.push_back(x * (id + y));
    for (size_t t = 0; t < digits.size(); ++t) {
      if (++digits[t] < p) break;
      digits[t] = 0;
    }
  }
  return fiber;
}

std::vector<ModMatrix> lift_solutions(const ModMatrix& a, const ModMatrix& b, const std::vector<ModMatrix>& solutions_mod_pl) {
  std::vector<ModMatrix> out;
  for (const auto& x0 : solutions_mod_pl) {
    auto fiber = lift_fiber(a, b, x0);
    for (auto& x : fiber.lifts) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace kloo
