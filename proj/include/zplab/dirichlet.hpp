#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <map>
#include <vector>

#include "zplab/expression.hpp"
#include "zplab/types.hpp"

namespace zplab {

// Dirichlet-series machinery: the coefficients eta_n of F, the leading index
// n_F, the lattice-supported coefficients alpha(d) of F'/F, and the explicit
// zero-free abscissas.

using Rational = boost::multiprecision::cpp_rational;

Rational rational_from_long(long long n);
Rational rational_from_real(double v);  // exact: every binary double is rational
// "3/2", "1.5", "7" all parse; decimals convert exactly via their binary value
Rational rational_from_string(const std::string& text);
std::string rational_to_string(const Rational& r);
Real rational_to_real(const Rational& r);

struct DirichletCoefficients {
  int N = 0;                  // truncation length
  std::vector<Complex> eta;   // eta[n] for n = 1..N (index 0 unused)
  int n_F = 0;                // leading index
  Real zero_threshold = 0;    // 1e-12 * max |eta_n|

  const Complex& leading() const { return eta[static_cast<std::size_t>(n_F)]; }
  // smallest B with |eta_n| <= B sqrt(n) over the stored range; feeds the
  // checked-not-proved tail bound used by zero_free_right
  Real growth_constant() const;
};

// eta_1..eta_N by iterated Dirichlet convolution of the sequences (-log n)^l
DirichletCoefficients coefficients(const FExpression& expr, int N);

// convenience: grows N until the leading index is found (or gives up)
DirichletCoefficients coefficients_auto(const FExpression& expr, int min_N = 64);

struct LatticeSeries {
  Real X = 0;   // truncation bound on the frequencies
  int n_F = 1;
  std::map<Rational, Complex> entries;  // alpha(d) for lattice points d <= X

  Complex alpha_at(const Rational& d) const {
    auto it = entries.find(d);
    return it == entries.end() ? Complex{} : it->second;
  }
};

// coefficients alpha(d) of F'/F = -log n_F + G'/G on the rational lattice
// d in n_F^{-m} N, computed by the exact Neumann recursion
// G'/G = sum_m (-1)^m G' A^m with G = 1 + A.
LatticeSeries log_derivative_coefficients(const FExpression& expr, Real X);

// smallest sigma on a 0.25-grid where the leading Dirichlet term dominates
// the certified tail: sum_{n>n_F} |eta_n| n^{-sigma} + Tail(N,sigma) <
// |eta_{n_F}| n_F^{-sigma}.  Rigorous up to the empirical coefficient bound
// |eta_n| <= B sqrt(n).
Real zero_free_right(const FExpression& expr);

struct LeftScanOptions {
  Real sigma_step = 0.25L;
  Real t_step = 0.25L;
  Real t_min = 0;          // 0 means scan |t| <= t_max symmetrically
  Real dominance = 0.9L;   // require |F - A1| <= dominance * |A1|
};

// empirical left abscissa: largest sigma* <= 0 such that on the whole grid
// {sigma in [sigma_min, sigma*], |t| <= t_max} away from the disks
// |s + 2n| < epsilon (n >= 0) the asymptotic main term dominates the
// evaluated residual.  A scan, not a certificate.
Real zero_free_left_scan(const FExpression& expr, Real sigma_min, Real epsilon,
                         Real t_max, const LeftScanOptions& opts = {});

struct ZeroFreeBounds {
  Real E2F = 0;       // rigorous (tail-bound certified) right abscissa
  Real E1F_scan = 0;  // empirical left abscissa
  Real epsilon = 0;   // exclusion radius used by the scan
};

// asymptotic main term of F(s) deep in the left half plane:
// sumJ * (-log(1-s))^{deg2} * (chi(s) * zeta(1-s))^{deg1}
Complex left_main_term(const FExpression& expr, const DegreeReport& rep, const Complex& s);

void write_coefficients_csv(std::ostream& os, const DirichletCoefficients& dc);
void write_lattice_csv(std::ostream& os, const LatticeSeries& ls);

inline constexpr Real kMaxLatticeX = 1000.0L;

}  // namespace zplab
