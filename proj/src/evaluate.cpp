#include "zplab/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "zplab/errors.hpp"

namespace zplab {

namespace {

Complex monomial_value(const Monomial& m, const std::vector<Complex>& z) {
  Complex v = m.coeff;
  for (std::size_t l = 0; l < m.exponents.size(); ++l)
    for (int e = 0; e < m.exponents[l]; ++e) v *= z[l];
  return v;
}

// first-order sensitivity of sum_j |c_j| prod |z_l|^{d_l} to per-factor
// absolute errors: err_F <= sum_j |c_j| sum_l d_l |z_l|^{d_l-1}
// prod_{m != l}|z_m|^{d_m} * err_l
Real propagated_error(const FExpression& expr, const std::vector<Complex>& z,
                      const std::vector<Real>& zerr) {
  std::vector<Real> zabs(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) zabs[i] = std::abs(z[i]);
  Real total = 0;
  for (const auto& m : expr.monomials()) {
    const Real ca = std::abs(m.coeff);
    for (std::size_t l = 0; l < m.exponents.size(); ++l) {
      if (m.exponents[l] == 0) continue;
      Real part = ca * static_cast<Real>(m.exponents[l]);
      for (std::size_t q = 0; q < m.exponents.size(); ++q) {
        int e = m.exponents[q];
        if (q == l) e -= 1;
        for (int i = 0; i < e; ++i) part *= zabs[q];
      }
      total += part * zerr[l];
    }
  }
  return total;
}

std::vector<Complex> derivatives_from_jet(const ZetaJet& zj, int upto) {
  std::vector<Complex> out(static_cast<std::size_t>(upto) + 1);
  for (int j = 0; j <= upto; ++j) out[static_cast<std::size_t>(j)] = zj.derivative(j);
  return out;
}

FEvaluation evaluate_with_target(const FExpression& expr, const Complex& s,
                                 Real target_abs_err, bool enforce) {
  if (expr.is_zero()) return {Complex{}, 0};
  const int k = expr.max_order();

  // pass 1: best effort; usually already far below any sane target
  ZetaJet zj = zeta_jet(s, k, -1);
  std::vector<Complex> z = derivatives_from_jet(zj, k);
  Complex value{};
  for (const auto& m : expr.monomials()) value += monomial_value(m, z);
  Real err = 2 * propagated_error(expr, z, zj.deriv_err);

  if (enforce && err > target_abs_err) {
    // pass 2: distribute the target over the factors and retry strictly
    std::vector<Real> unit(static_cast<std::size_t>(k) + 1, 1);
    const Real sens = std::max<Real>(propagated_error(expr, z, unit), 1e-30L);
    const Real per_factor = target_abs_err / (4 * sens);
    zj = zeta_jet(s, k, per_factor);  // PrecisionUnreachable if hopeless
    z = derivatives_from_jet(zj, k);
    value = Complex{};
    for (const auto& m : expr.monomials()) value += monomial_value(m, z);
    err = 2 * propagated_error(expr, z, zj.deriv_err);
    if (err > target_abs_err)
      raise(ErrorCode::PrecisionUnreachable,
            "propagated error bound exceeds the requested accuracy");
  }
  return {value, err};
}

}  // namespace

FEvaluation evaluate_F(const FExpression& expr, const Complex& s, Real target_abs_err) {
  if (target_abs_err < kMinTargetAbsErr)
    raise(ErrorCode::InvalidArgument, "target_abs_err must be >= 1e-13");
  return evaluate_with_target(expr, s, target_abs_err, true);
}

FEvaluation evaluate_F_derivative(const FExpression& expr, const Complex& s,
                                  Real target_abs_err) {
  // F' is itself a polynomial in zeta derivatives; reuse the same machinery
  return evaluate_F(expr.differentiated(), s, target_abs_err);
}

FEvaluation evaluate_F_auto(const FExpression& expr, const Complex& s) {
  return evaluate_with_target(expr, s, 0, false);
}

FPair evaluate_F_pair(const FExpression& expr, const Complex& s) {
  FPair out;
  if (expr.is_zero()) return out;
  const int k = expr.max_order();
  const FExpression dexpr = expr.differentiated();

  ZetaJet zj = zeta_jet(s, k + 1, -1);
  std::vector<Complex> z = derivatives_from_jet(zj, k + 1);
  for (const auto& m : expr.monomials()) out.f += monomial_value(m, z);
  for (const auto& m : dexpr.monomials()) out.fprime += monomial_value(m, z);
  out.err_f = 2 * propagated_error(expr, z, zj.deriv_err);
  out.err_fprime = 2 * propagated_error(dexpr, z, zj.deriv_err);
  return out;
}

}  // namespace zplab
