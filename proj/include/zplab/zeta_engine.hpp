#pragma once

#include <vector>

#include "zplab/jet.hpp"
#include "zplab/types.hpp"

namespace zplab {

// Evaluation of zeta^{(k)}(s), Gamma(s) and the functional-equation factor
// chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s), with explicit error bounds.
//
// Method: Euler-Maclaurin summation with every term differentiated
// analytically (the k-th s-derivative of n^{-s} is (-log n)^k n^{-s};
// the N^{1-s}/(s-1), N^{-s}/2 and Bernoulli corrections are differentiated
// as truncated Taylor jets).  For Re s < -5 the functional equation
// zeta(s) = chi(s) zeta(1-s) is used instead, which avoids the catastrophic
// cancellation of the direct sum deep in the left half plane.

inline constexpr int kMaxDerivativeOrder = 20;   // public ceiling for k
inline constexpr int kMaxInternalOrder = 22;     // headroom for F' evaluation
inline constexpr Real kMinTargetAbsErr = 1e-13L;
inline constexpr Real kMaxHeight = 1e5L;         // validated |Im s| range

struct EvalRequest {
  Complex s{};
  int k = 0;
  Real target_abs_err = 1e-12L;
};

struct ZetaJet {
  Jet jet;                      // coefficients zeta^{(j)}(s)/j!
  std::vector<Real> deriv_err;  // bound on |jet.derivative(j) - zeta^{(j)}(s)|

  explicit ZetaJet(int order) : jet(order), deriv_err(static_cast<std::size_t>(order) + 1, 0) {}
  Complex derivative(int j) const { return jet.derivative(j); }
};

// Jet of zeta at s up to `order` derivatives.  target_abs_err > 0 enforces
// the bound on every derivative order (PrecisionUnreachable if it cannot be
// met); target_abs_err <= 0 asks for best effort near machine precision and
// reports the achieved bounds.
ZetaJet zeta_jet(const Complex& s, int order, Real target_abs_err);

// Single derivative with the strict absolute-error contract.
Complex zeta_derivative(const EvalRequest& req);

// Gamma(s); relative error ~1e-12 or better for |s| <= 200.
Complex gamma_fn(const Complex& s);

// log Gamma(s), correct modulo 2*pi*i (enough to exponentiate).
Complex log_gamma(const Complex& s);
Jet log_gamma_jet(const Complex& s, int order);

// chi(s) with chi poles at odd positive integers rejected (PoleHit).
Complex chi_fn(const Complex& s);
Jet chi_jet(const Complex& s, int order);

// log sin(z) modulo 2*pi*i, stable for large |Im z| (no overflow).
Jet log_sin_jet(const Complex& z, int order);

// Bernoulli numbers B_2, B_4, ... as B_{2j} = bernoulli_even()[j], j >= 1.
// Built once at startup from the exact rational recurrence.
const std::vector<Real>& bernoulli_even();

}  // namespace zplab
