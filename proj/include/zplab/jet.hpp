#pragma once

#include <cassert>
#include <vector>

#include "zplab/types.hpp"

namespace zplab {

// Truncated Taylor series in one complex variable: c[0] + c[1]*eps + ... +
// c[order]*eps^order.  Coefficient j holds f^{(j)}(s0)/j!, so an order-k jet
// of zeta at s0 carries zeta, zeta', ..., zeta^{(k)} in one object.  Orders
// stay small (<= 22), so schoolbook products are fine.
class Jet {
 public:
  explicit Jet(int order) : c_(static_cast<std::size_t>(order) + 1, Complex{}) {
    assert(order >= 0);
  }

  static Jet constant(const Complex& v, int order) {
    Jet j(order);
    j.c_[0] = v;
    return j;
  }

  // the local coordinate s0 + eps
  static Jet variable(const Complex& s0, int order) {
    Jet j(order);
    j.c_[0] = s0;
    if (order >= 1) j.c_[1] = Complex(1, 0);
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Complex& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Complex& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  Complex value() const { return c_[0]; }
  // f^{(j)}(s0) = j! * c[j]
  Complex derivative(int j) const;

  Jet& operator+=(const Jet& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(const Complex& a) {
    for (auto& v : c_) v *= a;
    return *this;
  }
  Jet& operator*=(Real a) {
    for (auto& v : c_) v *= a;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Complex& s) { return a *= s; }
  friend Jet operator*(const Complex& s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, Real s) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  // in-place product with the linear jet (c[0]+shift) + eps; one pass, O(order)
  Jet& mul_linear(const Complex& a0);

  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);  // principal branch at the base point
  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  friend Jet pow_int(const Jet& a, int n);  // n >= 0
  friend Jet log1p(const Jet& a);           // log(1 + a), |a[0]| < 1

  Real max_abs() const {
    Real m = 0;
    for (const auto& v : c_) m = std::max(m, abs1(v));
    return m;
  }

  bool finite() const {
    for (const auto& v : c_)
      if (!is_finite(v)) return false;
    return true;
  }

 private:
  std::vector<Complex> c_;
};

}  // namespace zplab
