#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "zplab/expression.hpp"
#include "zplab/types.hpp"

namespace zplab {

// Zero counting and location by the argument principle: the winding number of
// F along a rectangle boundary equals the number of enclosed zeros (counted
// with multiplicity), tracked by adaptive sampling of arg increments.

struct Rectangle {
  Real sigma_lo = 0, sigma_hi = 0, t_lo = 0, t_hi = 0;

  Real width() const { return sigma_hi - sigma_lo; }
  Real height() const { return t_hi - t_lo; }
  bool contains(const Complex& z) const {
    return z.real() >= sigma_lo && z.real() <= sigma_hi && z.imag() >= t_lo &&
           z.imag() <= t_hi;
  }
};

struct ZeroRecord {
  Complex rho{};          // beta + i gamma
  int multiplicity = 1;
  Real residual = 0;      // |F(rho)|
  Real box_radius = 0;    // certification-circle radius

  Real beta() const { return rho.real(); }
  Real gamma() const { return rho.imag(); }
};

struct WindingOptions {
  bool allow_pole = false;       // permit s = 1 inside (count becomes zeros - pole order)
  Real snap_tol = 0.01L;         // integer-snap tolerance on the winding number
  Real dip_threshold = 1e-8L;    // |F| < dip * local scale => boundary zero suspected
  int max_depth = 46;            // per-interval bisection depth limit
  long max_evals = 4000000;
};

int winding_count(const FExpression& expr, const Rectangle& rect,
                  const WindingOptions& opts = {});

struct LocateOptions {
  Real cluster_resolution = 1e-6L;  // unresolved clusters become one multiple zero
  Real newton_step_tol = 1e-11L;
  int newton_max_iter = 60;
  Real residual_tol = 1e-9L;
  int threads = 1;
  WindingOptions winding{};
  std::function<void(std::size_t)> progress;  // called with #boxes processed
};

// Recursive quadrisection + Newton refinement; output sorted by gamma, beta.
std::vector<ZeroRecord> locate_zeros(const FExpression& expr, const Rectangle& rect,
                                     const LocateOptions& opts = {});

// winding number of F around the circle |s + 2n| = epsilon
int trivial_cluster_count(const FExpression& expr, int n, Real epsilon,
                          const WindingOptions& opts = {});

void write_zeros_csv(std::ostream& os, const std::vector<ZeroRecord>& zeros);

}  // namespace zplab
