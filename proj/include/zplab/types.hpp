#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace zplab {

// All internal arithmetic runs in 80-bit extended precision so that the
// public absolute-error contracts (down to 1e-13) survive the cancellation
// that happens near zeros of F.
using Real = long double;
using Complex = std::complex<Real>;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Real kTwoPi = 6.283185307179586476925286766559005768L;
inline constexpr Real kLog2Pi = 1.837877066409345483560659472811235279L;
inline constexpr Real kE = 2.718281828459045235360287471352662498L;
inline constexpr Real kMachineEps = std::numeric_limits<Real>::epsilon();

inline bool is_finite(Real x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline Real abs1(const Complex& z) {
  // cheap |.| upper bound used for error accounting
  return std::fabs(z.real()) + std::fabs(z.imag());
}

}  // namespace zplab
