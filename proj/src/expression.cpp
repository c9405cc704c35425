#include "zplab/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "zplab/errors.hpp"
#include "zplab/zeta_engine.hpp"

namespace zplab {

namespace {

// exponent-vector comparison with implicit zero padding; descending order
// puts high z0-powers first ("z0^3 + z1^2")
bool exponents_less(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int ai = i < a.size() ? a[i] : 0;
    const int bi = i < b.size() ? b[i] : 0;
    if (ai != bi) return ai > bi;
  }
  return false;
}

void trim_trailing_zeros(std::vector<int>& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

std::string format_real(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.21Lg", v);
  return buf;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Monomial> run() {
    std::vector<Monomial> monomials;
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = (take() == '-');
    monomials.push_back(parse_term(negate));
    skip_ws();
    while (pos_ < text_.size()) {
      const char c = peek();
      if (c != '+' && c != '-')
        raise(ErrorCode::SyntaxError, "expected '+' or '-' between terms", pos_);
      take();
      monomials.push_back(parse_term(c == '-'));
      skip_ws();
    }
    return monomials;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char take() { return text_[pos_++]; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Real parse_decimal() {
    skip_ws();
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    const Real v = std::strtold(begin, &end);
    if (end == begin)
      raise(ErrorCode::SyntaxError, "expected a number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  long parse_int() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      raise(ErrorCode::SyntaxError, "expected an integer", pos_);
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (take() - '0');
      if (v > 1000000) raise(ErrorCode::SyntaxError, "integer too large", pos_);
    }
    return v;
  }

  Monomial parse_term(bool negate) {
    skip_ws();
    Monomial m;
    m.coeff = Complex(1, 0);
    bool saw_anything = false;

    const char c = peek();
    if (c == '(') {
      take();
      const Real re = parse_decimal();
      skip_ws();
      if (peek() != ',') raise(ErrorCode::SyntaxError, "expected ',' in complex coefficient", pos_);
      take();
      const Real im = parse_decimal();
      skip_ws();
      if (peek() != ')') raise(ErrorCode::SyntaxError, "expected ')' after complex coefficient", pos_);
      take();
      m.coeff = Complex(re, im);
      saw_anything = true;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      m.coeff = Complex(parse_decimal(), 0);
      saw_anything = true;
    }

    for (;;) {
      skip_ws();
      if (peek() == '*') {
        const std::size_t star = pos_;
        take();
        skip_ws();
        if (peek() != 'z')
          raise(ErrorCode::SyntaxError, "expected a factor 'z<order>' after '*'", star);
      }
      skip_ws();
      if (peek() != 'z') break;
      const std::size_t at = pos_;
      take();
      const long order = parse_int();
      if (order > kMaxDerivativeOrder)
        raise(ErrorCode::SyntaxError,
              "derivative order z" + std::to_string(order) + " exceeds the supported maximum z" +
                  std::to_string(kMaxDerivativeOrder),
              at);
      long power = 1;
      skip_ws();
      if (peek() == '^') {
        take();
        power = parse_int();
        if (power > 64) raise(ErrorCode::SyntaxError, "exponent too large", pos_);
      }
      if (m.exponents.size() <= static_cast<std::size_t>(order))
        m.exponents.resize(static_cast<std::size_t>(order) + 1, 0);
      m.exponents[static_cast<std::size_t>(order)] += static_cast<int>(power);
      saw_anything = true;
    }

    if (!saw_anything)
      raise(ErrorCode::SyntaxError, "expected a term", pos_);
    if (negate) m.coeff = -m.coeff;
    trim_trailing_zeros(m.exponents);
    return m;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FExpression FExpression::from_monomials(std::vector<Monomial> monomials) {
  for (auto& m : monomials) trim_trailing_zeros(m.exponents);
  std::sort(monomials.begin(), monomials.end(),
            [](const Monomial& a, const Monomial& b) {
              return exponents_less(a.exponents, b.exponents);
            });
  std::vector<Monomial> merged;
  for (auto& m : monomials) {
    if (!merged.empty() && merged.back().exponents == m.exponents)
      merged.back().coeff += m.coeff;
    else
      merged.push_back(std::move(m));
  }
  std::erase_if(merged, [](const Monomial& m) { return m.coeff == Complex{}; });

  FExpression out;
  out.monomials_ = std::move(merged);
  out.max_order_ = 0;
  for (const auto& m : out.monomials_)
    out.max_order_ = std::max(out.max_order_, static_cast<int>(m.exponents.size()) - 1);
  return out;
}

FExpression FExpression::parse(std::string_view text) {
  if (text.empty()) raise(ErrorCode::SyntaxError, "empty expression", 0);
  if (text.size() > kMaxExpressionBytes)
    raise(ErrorCode::SyntaxError, "expression exceeds 64 KiB", 0);
  FExpression out = from_monomials(Parser(text).run());
  if (!out.monomials_.empty()) {
    const bool all_constant = std::all_of(
        out.monomials_.begin(), out.monomials_.end(),
        [](const Monomial& m) { return m.is_constant(); });
    if (all_constant)
      raise(ErrorCode::ConstantExpression,
            "expression contains no zeta factor after merging");
  }
  return out;
}

bool FExpression::has_real_coefficients() const {
  for (const auto& m : monomials_)
    if (m.coeff.imag() != 0) return false;
  return true;
}

bool FExpression::operator==(const FExpression& o) const {
  if (monomials_.size() != o.monomials_.size()) return false;
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    if (monomials_[i].coeff != o.monomials_[i].coeff ||
        monomials_[i].exponents != o.monomials_[i].exponents)
      return false;
  return true;
}

std::string FExpression::to_string() const {
  if (monomials_.empty()) return "0*z0";  // canonical spelling of the zero polynomial
  std::string out;
  bool first = true;
  for (const auto& m : monomials_) {
    const bool real = m.coeff.imag() == 0;
    std::string coeff_text;
    bool minus = false;
    if (real) {
      Real v = m.coeff.real();
      if (v < 0) {
        minus = true;
        v = -v;
      }
      if (v != 1 || m.is_constant()) coeff_text = format_real(v);
    } else {
      coeff_text = "(" + format_real(m.coeff.real()) + "," + format_real(m.coeff.imag()) + ")";
    }
    if (first) {
      if (minus) out += "-";
      first = false;
    } else {
      out += minus ? " - " : " + ";
    }
    std::string body;
    for (std::size_t l = 0; l < m.exponents.size(); ++l) {
      if (m.exponents[l] == 0) continue;
      if (!body.empty()) body += "*";
      body += "z" + std::to_string(l);
      if (m.exponents[l] > 1) body += "^" + std::to_string(m.exponents[l]);
    }
    if (coeff_text.empty()) {
      out += body;
    } else if (body.empty()) {
      out += coeff_text;
    } else {
      out += coeff_text + "*" + body;
    }
  }
  return out;
}

FExpression FExpression::differentiated() const {
  if (max_order_ + 1 > kMaxInternalOrder - 1)
    raise(ErrorCode::InvalidArgument, "differentiation would exceed the derivative ceiling");
  std::vector<Monomial> out;
  for (const auto& m : monomials_) {
    for (std::size_t l = 0; l < m.exponents.size(); ++l) {
      if (m.exponents[l] == 0) continue;
      Monomial d;
      d.coeff = m.coeff * static_cast<Real>(m.exponents[l]);
      d.exponents = m.exponents;
      d.exponents[l] -= 1;
      if (d.exponents.size() <= l + 1) d.exponents.resize(l + 2, 0);
      d.exponents[l + 1] += 1;
      out.push_back(std::move(d));
    }
  }
  return from_monomials(std::move(out));
}

FExpression FExpression::scaled(const Complex& c) const {
  std::vector<Monomial> out = monomials_;
  for (auto& m : out) m.coeff *= c;
  return from_monomials(std::move(out));
}

DegreeReport degrees(const FExpression& expr) {
  const auto& ms = expr.monomials();
  const bool degenerate =
      ms.empty() || std::all_of(ms.begin(), ms.end(),
                                [](const Monomial& m) { return m.is_constant(); });
  if (degenerate)
    raise(ErrorCode::ConstantExpression,
          "degrees are undefined for a constant or identically-zero expression");

  DegreeReport rep;
  rep.deg1 = 0;
  Real max_coeff = 0;
  for (const auto& m : ms) {
    rep.deg1 = std::max(rep.deg1, m.total_degree());
    max_coeff = std::max(max_coeff, std::abs(m.coeff));
  }
  rep.deg2 = 0;
  for (const auto& m : ms)
    if (m.total_degree() == rep.deg1)
      rep.deg2 = std::max(rep.deg2, m.weighted_degree());
  for (std::size_t j = 0; j < ms.size(); ++j)
    if (ms[j].total_degree() == rep.deg1 && ms[j].weighted_degree() == rep.deg2) {
      rep.J.push_back(static_cast<int>(j));
      rep.sumJ += ms[j].coeff;
    }
  rep.tolerance = 1e-12L * max_coeff;
  rep.condition_holds = std::abs(rep.sumJ) > rep.tolerance;
  return rep;
}

}  // namespace zplab
