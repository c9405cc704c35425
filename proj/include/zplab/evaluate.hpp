#pragma once

#include "zplab/expression.hpp"
#include "zplab/zeta_engine.hpp"

namespace zplab {

struct FEvaluation {
  Complex value{};
  Real err_bound = 0;
};

// F(s) / F'(s) with a propagated error bound <= target_abs_err (first-order
// product rule with a safety factor of 2; PrecisionUnreachable otherwise).
FEvaluation evaluate_F(const FExpression& expr, const Complex& s, Real target_abs_err);
FEvaluation evaluate_F_derivative(const FExpression& expr, const Complex& s, Real target_abs_err);

struct FPair {
  Complex f{};
  Complex fprime{};
  Real err_f = 0;
  Real err_fprime = 0;
};

// F and F' from one shared zeta jet, best-effort accuracy (near machine
// precision relative to the local scale).  This is the zero-finder's entry.
FPair evaluate_F_pair(const FExpression& expr, const Complex& s);

// value-only best-effort evaluation (order-k jet, no derivative)
FEvaluation evaluate_F_auto(const FExpression& expr, const Complex& s);

}  // namespace zplab
