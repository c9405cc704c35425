#include "zplab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "zplab/errors.hpp"
#include "zplab/evaluate.hpp"
#include "zplab/zeta_engine.hpp"

namespace zplab {

namespace mp = boost::multiprecision;

Rational rational_from_long(long long n) { return Rational(n); }

Rational rational_from_real(double v) {
  int e = 0;
  const double m = std::frexp(v, &e);
  const long long mant = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mant);
  if (e > 0)
    r *= Rational(mp::cpp_int(1) << e);
  else if (e < 0)
    r /= Rational(mp::cpp_int(1) << -e);
  return r;
}

Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      mp::cpp_int num(text.substr(0, slash));
      mp::cpp_int den(text.substr(slash + 1));
      if (den == 0) raise(ErrorCode::InvalidArgument, "zero denominator in " + text);
      return Rational(num, den);
    }
    if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos) {
      return Rational(mp::cpp_int(text));
    }
  } catch (const std::exception&) {
    raise(ErrorCode::InvalidArgument, "cannot parse rational '" + text + "'");
  }
  // decimal: exact binary value of the parsed double, then exact rational
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    raise(ErrorCode::InvalidArgument, "cannot parse rational '" + text + "'");
  return rational_from_real(v);
}

std::string rational_to_string(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) out += "/" + denominator(r).str();
  return out;
}

Real rational_to_real(const Rational& r) { return r.convert_to<Real>(); }

Real DirichletCoefficients::growth_constant() const {
  Real b = 0;
  for (int n = 1; n <= N; ++n)
    b = std::max(b, std::abs(eta[static_cast<std::size_t>(n)]) /
                        std::sqrt(static_cast<Real>(n)));
  return b;
}

// ---------------------------------------------------------------------------
// eta_n by iterated Dirichlet convolution
// ---------------------------------------------------------------------------

namespace {

// c[n] <- sum_{ab=n} a_seq[a] * b_seq[b], all sequences 1-based and dense
std::vector<Real> dirichlet_convolve(const std::vector<Real>& a,
                                     const std::vector<Real>& b, int N) {
  std::vector<Real> out(static_cast<std::size_t>(N) + 1, 0.0L);
  for (int i = 1; i <= N; ++i) {
    const Real ai = a[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (int j = 1; i * j <= N; ++j) {
      const Real bj = b[static_cast<std::size_t>(j)];
      if (bj == 0) continue;
      out[static_cast<std::size_t>(i * j)] += ai * bj;
    }
  }
  return out;
}

std::vector<Real> log_power_sequence(int l, int N) {
  std::vector<Real> seq(static_cast<std::size_t>(N) + 1, 0.0L);
  seq[1] = (l == 0) ? 1.0L : 0.0L;  // (-log 1)^0 = 1 by convention
  for (int n = 2; n <= N; ++n) {
    const Real v = -std::log(static_cast<Real>(n));
    Real p = 1;
    for (int i = 0; i < l; ++i) p *= v;
    seq[static_cast<std::size_t>(n)] = (l == 0) ? 1.0L : p;
  }
  return seq;
}

}  // namespace

DirichletCoefficients coefficients(const FExpression& expr, int N) {
  if (N < 2) raise(ErrorCode::InvalidArgument, "N must be >= 2");
  DirichletCoefficients out;
  out.N = N;
  out.eta.assign(static_cast<std::size_t>(N) + 1, Complex{});

  std::vector<std::vector<Real>> bases;  // base sequences per derivative order
  for (int l = 0; l <= expr.max_order(); ++l) bases.push_back(log_power_sequence(l, N));

  for (const auto& m : expr.monomials()) {
    std::vector<Real> conv(static_cast<std::size_t>(N) + 1, 0.0L);
    conv[1] = 1.0L;  // empty product = delta at n = 1
    for (std::size_t l = 0; l < m.exponents.size(); ++l)
      for (int e = 0; e < m.exponents[l]; ++e)
        conv = dirichlet_convolve(conv, bases[l], N);
    for (int n = 1; n <= N; ++n)
      out.eta[static_cast<std::size_t>(n)] += m.coeff * conv[static_cast<std::size_t>(n)];
  }

  Real max_abs = 0;
  for (int n = 1; n <= N; ++n)
    max_abs = std::max(max_abs, std::abs(out.eta[static_cast<std::size_t>(n)]));
  out.zero_threshold = 1e-12L * max_abs;
  out.n_F = 0;
  for (int n = 1; n <= N; ++n)
    if (std::abs(out.eta[static_cast<std::size_t>(n)]) > out.zero_threshold) {
      out.n_F = n;
      break;
    }
  if (out.n_F == 0)
    raise(ErrorCode::LeadingIndexNotFound,
          "no coefficient above threshold for n <= " + std::to_string(N));
  return out;
}

DirichletCoefficients coefficients_auto(const FExpression& expr, int min_N) {
  int N = std::max(min_N, 64);
  for (;;) {
    try {
      return coefficients(expr, N);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LeadingIndexNotFound || N >= 65536) throw;
      N *= 4;
    }
  }
}

// ---------------------------------------------------------------------------
// lattice coefficients of F'/F
// ---------------------------------------------------------------------------

LatticeSeries log_derivative_coefficients(const FExpression& expr, Real X) {
  if (X < 1 || X > kMaxLatticeX)
    raise(ErrorCode::InvalidArgument, "X must lie in [1, 1000]");

  DirichletCoefficients dc = coefficients_auto(expr);
  const int n_F = dc.n_F;
  const long need = static_cast<long>(std::ceil(X)) * n_F;
  if (dc.N < need) dc = coefficients(expr, static_cast<int>(need));

  const Complex lead = dc.leading();
  LatticeSeries out;
  out.X = X;
  out.n_F = n_F;

  // A: frequencies n/n_F (n > n_F) with G = 1 + A;  Gp: coefficients of G'
  std::map<Rational, Complex> A, Gp;
  const Real log_nF = std::log(static_cast<Real>(n_F));
  const Rational Xr = rational_from_real(static_cast<double>(X));
  for (int n = n_F + 1; n <= dc.N; ++n) {
    const Complex ratio = dc.eta[static_cast<std::size_t>(n)] / lead;
    if (ratio == Complex{}) continue;
    Rational d(n, n_F);
    if (d > Xr) break;
    const Real log_ratio = std::log(static_cast<Real>(n)) - log_nF;
    A.emplace(d, ratio);
    Gp.emplace(std::move(d), -log_ratio * ratio);
  }

  std::map<Rational, Complex> sum = Gp, q = Gp;
  Real gp_scale = 0;
  for (const auto& [d, v] : Gp) gp_scale = std::max(gp_scale, abs1(v));
  Real sign = -1;
  while (!q.empty()) {
    std::map<Rational, Complex> next;
    Real scale = 0;
    for (const auto& [dq, vq] : q) {
      for (const auto& [da, va] : A) {
        Rational d = dq * da;
        if (d > Xr) break;  // A is ordered; frequencies only grow
        next[d] += vq * va;
      }
    }
    for (auto& [d, v] : next) scale = std::max(scale, abs1(v));
    if (scale > 1e18L * (1 + gp_scale))
      raise(ErrorCode::TruncationUnstable,
            "lattice recursion coefficients grew beyond the stable range");
    for (const auto& [d, v] : next) sum[d] += sign * v;
    q = std::move(next);
    sign = -sign;
  }

  sum[Rational(1)] += Complex(-log_nF, 0);
  out.entries = std::move(sum);
  return out;
}

// ---------------------------------------------------------------------------
// zero-free abscissas
// ---------------------------------------------------------------------------

Real zero_free_right(const FExpression& expr) {
  DirichletCoefficients dc = coefficients_auto(expr, 512);
  if (dc.N < 4 * dc.n_F) dc = coefficients(expr, 4 * dc.n_F);
  const int N = dc.N;
  const Real lead_abs = std::abs(dc.leading());
  const Real B = dc.growth_constant();

  for (Real sigma = 1.75L; sigma <= 60.0L; sigma += 0.25L) {
    // tail: B * Int_N^inf x^{1/2 - sigma} dx, requires sigma > 3/2
    const Real tail = B * std::pow(static_cast<Real>(N), 1.5L - sigma) / (sigma - 1.5L);
    Real partial = 0;
    for (int n = dc.n_F + 1; n <= N; ++n)
      partial += std::abs(dc.eta[static_cast<std::size_t>(n)]) *
                 std::pow(static_cast<Real>(n), -sigma);
    const Real lead_term = lead_abs * std::pow(static_cast<Real>(dc.n_F), -sigma);
    if (partial + tail < lead_term) return sigma;
  }
  raise(ErrorCode::NotCertifiable, "no dominance abscissa found below 60");
}

Complex left_main_term(const FExpression& expr, const DegreeReport& rep, const Complex& s) {
  const Complex w = Complex(1, 0) - s;
  const Complex log_w = std::log(w);
  Complex main = rep.sumJ;
  for (int i = 0; i < rep.deg2; ++i) main *= -log_w;
  const Complex body = chi_fn(s) * zeta_jet(w, 0, -1).jet.value();
  for (int i = 0; i < rep.deg1; ++i) main *= body;
  (void)expr;
  return main;
}

Real zero_free_left_scan(const FExpression& expr, Real sigma_min, Real epsilon,
                         Real t_max, const LeftScanOptions& opts) {
  if (sigma_min < -200.0L || sigma_min >= 0)
    raise(ErrorCode::InvalidArgument, "sigma_min must lie in [-200, 0)");
  if (epsilon <= 0 || epsilon >= 1)
    raise(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  const DegreeReport rep = degrees(expr);
  if (!rep.condition_holds)
    raise(ErrorCode::ScanInconclusive,
          "the asymptotic main term vanishes: sum over J of c_j is ~0");

  const Real t_lo = (opts.t_min > 0) ? opts.t_min : -t_max;
  Real certified = std::numeric_limits<Real>::quiet_NaN();
  for (Real sigma = sigma_min; sigma <= 1e-12L; sigma += opts.sigma_step) {
    bool column_ok = true;
    for (Real t = t_lo; t <= t_max + 1e-12L && column_ok; t += opts.t_step) {
      const Complex s(sigma, t);
      // skip the exclusion disks around s = 0, -2, -4, ...
      const Real nearest = -2.0L * std::round(sigma / -2.0L);
      if (std::abs(s - Complex(nearest, 0)) < epsilon && nearest <= 0) continue;
      try {
        const Complex a1 = left_main_term(expr, rep, s);
        const Complex f = evaluate_F_auto(expr, s).value;
        if (!is_finite(a1) || !is_finite(f) ||
            std::abs(f - a1) > opts.dominance * std::abs(a1))
          column_ok = false;
      } catch (const Error&) {
        column_ok = false;
      }
    }
    if (!column_ok) break;
    certified = sigma;
  }
  if (std::isnan(certified))
    raise(ErrorCode::ScanInconclusive,
          "main-term dominance fails already at sigma_min");
  return certified;
}

// ---------------------------------------------------------------------------
// CSV export
// ---------------------------------------------------------------------------

namespace {
std::string g15(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", static_cast<double>(v));
  return buf;
}
}  // namespace

void write_coefficients_csv(std::ostream& os, const DirichletCoefficients& dc) {
  os << "n,eta_re,eta_im\n";
  for (int n = 1; n <= dc.N; ++n) {
    const Complex& v = dc.eta[static_cast<std::size_t>(n)];
    os << n << "," << g15(v.real()) << "," << g15(v.imag()) << "\n";
  }
}

void write_lattice_csv(std::ostream& os, const LatticeSeries& ls) {
  os << "d,alpha_re,alpha_im\n";
  for (const auto& [d, v] : ls.entries)
    os << rational_to_string(d) << "," << g15(v.real()) << "," << g15(v.imag()) << "\n";
}

}  // namespace zplab
