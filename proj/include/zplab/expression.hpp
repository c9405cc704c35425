#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zplab/types.hpp"

namespace zplab {

// F(s) = sum_j c_j * z0^{d_{0j}} * z1^{d_{1j}} * ... where zl stands for the
// l-th derivative of zeta.  Input grammar:
//
//   expression := ['+'|'-'] term (('+'|'-') term)*
//   term       := coeff? ('*'? factor)*
//   factor     := 'z' INT ('^' INT)?
//   coeff      := decimal | '(' decimal ',' decimal ')'
//
// Like monomials are merged and zero coefficients dropped, so structural
// cancellations ("z0^2 - z0*z0") collapse at parse time.

struct Monomial {
  Complex coeff{};
  std::vector<int> exponents;  // exponents[l] = power of zl, trailing zeros trimmed

  int total_degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
  int weighted_degree() const {
    int d = 0;
    for (std::size_t l = 0; l < exponents.size(); ++l)
      d += static_cast<int>(l) * exponents[l];
    return d;
  }
  bool is_constant() const { return exponents.empty(); }
};

class FExpression {
 public:
  FExpression() = default;

  static FExpression parse(std::string_view text);
  static FExpression from_monomials(std::vector<Monomial> monomials);

  const std::vector<Monomial>& monomials() const { return monomials_; }
  int max_order() const { return max_order_; }  // largest l with zl present
  bool is_zero() const { return monomials_.empty(); }
  bool has_real_coefficients() const;

  std::string to_string() const;  // canonical form; parse(to_string()) == *this

  FExpression differentiated() const;
  FExpression scaled(const Complex& c) const;

  bool operator==(const FExpression& o) const;

 private:
  std::vector<Monomial> monomials_;  // canonical order, distinct exponent vectors
  int max_order_ = 0;
};

struct DegreeReport {
  int deg1 = 0;           // max_j sum_l d_lj
  int deg2 = 0;           // max weighted degree among deg1-attaining monomials
  std::vector<int> J;     // indices (canonical order) attaining deg1 and deg2
  Complex sumJ{};         // sum of c_j over J
  bool condition_holds = false;  // |sumJ| > tolerance
  Real tolerance = 0;     // 1e-12 * max_j |c_j|
};

DegreeReport degrees(const FExpression& expr);

inline constexpr std::size_t kMaxExpressionBytes = 64 * 1024;

}  // namespace zplab
