#include "zplab/jet.hpp"

#include <cmath>

namespace zplab {

Complex Jet::derivative(int j) const {
  Real fact = 1;
  for (int i = 2; i <= j; ++i) fact *= static_cast<Real>(i);
  return c_[static_cast<std::size_t>(j)] * fact;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = a.order();
  Jet out(n);
  for (int i = 0; i <= n; ++i) {
    if (a.c_[static_cast<std::size_t>(i)] == Complex{}) continue;
    const Complex ai = a.c_[static_cast<std::size_t>(i)];
    for (int j = 0; i + j <= n; ++j)
      out.c_[static_cast<std::size_t>(i + j)] += ai * b.c_[static_cast<std::size_t>(j)];
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  const int n = a.order();
  Jet out(n);
  const Complex inv_b0 = Complex(1, 0) / b.c_[0];
  for (int i = 0; i <= n; ++i) {
    Complex acc = a.c_[static_cast<std::size_t>(i)];
    for (int j = 1; j <= i; ++j)
      acc -= b.c_[static_cast<std::size_t>(j)] * out.c_[static_cast<std::size_t>(i - j)];
    out.c_[static_cast<std::size_t>(i)] = acc * inv_b0;
  }
  return out;
}

Jet& Jet::mul_linear(const Complex& a0) {
  const int n = order();
  for (int i = n; i >= 1; --i)
    c_[static_cast<std::size_t>(i)] =
        c_[static_cast<std::size_t>(i)] * a0 + c_[static_cast<std::size_t>(i - 1)];
  c_[0] *= a0;
  return *this;
}

Jet exp(const Jet& a) {
  const int n = a.order();
  Jet out(n);
  out.c_[0] = std::exp(a.c_[0]);
  for (int i = 1; i <= n; ++i) {
    Complex acc{};
    for (int k = 1; k <= i; ++k)
      acc += static_cast<Real>(k) * a.c_[static_cast<std::size_t>(k)] *
             out.c_[static_cast<std::size_t>(i - k)];
    out.c_[static_cast<std::size_t>(i)] = acc / static_cast<Real>(i);
  }
  return out;
}

Jet log(const Jet& a) {
  const int n = a.order();
  Jet out(n);
  out.c_[0] = std::log(a.c_[0]);
  const Complex inv_a0 = Complex(1, 0) / a.c_[0];
  for (int i = 1; i <= n; ++i) {
    Complex acc = a.c_[static_cast<std::size_t>(i)];
    for (int k = 1; k < i; ++k)
      acc -= (static_cast<Real>(k) / static_cast<Real>(i)) *
             out.c_[static_cast<std::size_t>(k)] * a.c_[static_cast<std::size_t>(i - k)];
    out.c_[static_cast<std::size_t>(i)] = acc * inv_a0;
  }
  return out;
}

Jet log1p(const Jet& a) {
  Jet shifted = a;
  shifted[0] += Real(1);
  // base value via log1p-like care: |a[0]| may be tiny
  Jet out = log(shifted);
  // recompute the constant term accurately when a[0] is small
  const Complex a0 = a[0];
  if (abs1(a0) < Real(0.5)) {
    // log(1+z) with a stable series fallback for very small z
    if (abs1(a0) < Real(1e-8)) {
      out[0] = a0 - a0 * a0 / Real(2) + a0 * a0 * a0 / Real(3);
    }
  }
  return out;
}

Jet sin(const Jet& a) {
  // (e^{ia} - e^{-ia}) / 2i; fine for the small-|Im| points this is used at
  const Complex iu(0, 1);
  Jet p = exp(a * iu);
  Jet q = exp(a * (-iu));
  Jet out = p - q;
  out *= Complex(0, -0.5L);
  return out;
}

Jet cos(const Jet& a) {
  const Complex iu(0, 1);
  Jet p = exp(a * iu);
  Jet q = exp(a * (-iu));
  Jet out = p + q;
  out *= Real(0.5L);
  return out;
}

Jet pow_int(const Jet& a, int n) {
  Jet result = Jet::constant(Complex(1, 0), a.order());
  Jet base = a;
  int e = n;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

}  // namespace zplab
