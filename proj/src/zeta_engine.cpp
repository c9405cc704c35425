#include "zplab/zeta_engine.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>

#include "zplab/errors.hpp"

namespace zplab {

namespace {

constexpr int kEmBernoulliTerms = 30;  // corrections B_2 .. B_60
constexpr long kEmMaxN = 500000;

Real factorial(int n) {
  static const auto table = [] {
    std::array<Real, 64> t{};
    t[0] = 1;
    for (int i = 1; i < 64; ++i) t[i] = t[i - 1] * static_cast<Real>(i);
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

Real binomial(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

bool is_real_integer(const Complex& s) {
  return s.imag() == 0 && std::floor(s.real()) == s.real();
}

}  // namespace

const std::vector<Real>& bernoulli_even() {
  static const std::vector<Real> table = [] {
    namespace mp = boost::multiprecision;
    using Rat = mp::cpp_rational;
    const int m_max = 2 * kEmBernoulliTerms + 4;
    // exact rational recurrence B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
    std::vector<Rat> b(static_cast<std::size_t>(m_max) + 1);
    b[0] = 1;
    for (int m = 1; m <= m_max; ++m) {
      Rat acc = 0;
      mp::cpp_int binom = 1;  // C(m+1, 0)
      for (int k = 0; k < m; ++k) {
        acc += Rat(binom) * b[static_cast<std::size_t>(k)];
        binom = binom * (m + 1 - k) / (k + 1);
      }
      b[static_cast<std::size_t>(m)] = -acc / (m + 1);
    }
    std::vector<Real> out(static_cast<std::size_t>(kEmBernoulliTerms) + 3, 0.0L);
    for (int j = 1; j < static_cast<int>(out.size()); ++j)
      out[static_cast<std::size_t>(j)] =
          b[static_cast<std::size_t>(2 * j)].convert_to<Real>();
    return out;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// log sin / log Gamma / chi
// ---------------------------------------------------------------------------

Jet log_sin_jet(const Complex& z, int order) {
  const Jet zj = Jet::variable(z, order);
  if (std::fabs(z.imag()) <= 1.5L) {
    return log(sin(zj));
  }
  const Complex iu(0, 1);
  if (z.imag() > 0) {
    // sin z = e^{-iz} (i/2) (1 - e^{2iz}),  |e^{2iz}| = e^{-2 Im z} small
    Jet w = exp(zj * (Complex(0, 2)));
    Jet out = log1p(w * Complex(-1, 0));
    out += zj * (-iu);
    out[0] += Complex(-std::log(2.0L), kPi / 2);  // log(i/2)
    return out;
  }
  // sin z = e^{iz} (-i/2) (1 - e^{-2iz})
  Jet w = exp(zj * (Complex(0, -2)));
  Jet out = log1p(w * Complex(-1, 0));
  out += zj * iu;
  out[0] += Complex(-std::log(2.0L), -kPi / 2);  // log(-i/2)
  return out;
}

namespace {

// Stirling series for log Gamma, valid for Re w >= 12.
Jet log_gamma_stirling(const Complex& w0, int order) {
  const Jet w = Jet::variable(w0, order);
  const Jet lw = log(w);
  Jet half = Jet::constant(Complex(0.5L, 0), order);
  Jet out = (w - half) * lw - w;
  out[0] += kLog2Pi / 2;
  const Jet winv = Jet::constant(Complex(1, 0), order) / w;
  const Jet winv2 = winv * winv;
  Jet p = winv;  // w^{-(2j-1)}
  const auto& bern = bernoulli_even();
  for (int j = 1; j <= 12; ++j) {
    const Real c = bern[static_cast<std::size_t>(j)] /
                   (static_cast<Real>(2 * j) * static_cast<Real>(2 * j - 1));
    out += p * c;
    p = p * winv2;
  }
  return out;
}

// flip the expansion variable: g(s) = f(c - s) from the jet of f at c - s0
Jet flip_variable(Jet j) {
  for (int i = 1; i <= j.order(); i += 2) j[i] = -j[i];
  return j;
}

// substitute a linear argument: g(s) = f(a*s + b) from the jet of f at a*s0+b
Jet scale_variable(Jet j, const Complex& a) {
  Complex p(1, 0);
  for (int i = 1; i <= j.order(); ++i) {
    p *= a;
    j[i] *= p;
  }
  return j;
}

}  // namespace

Jet log_gamma_jet(const Complex& z, int order) {
  if (z.real() < 0.5L) {
    // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
    Jet ls = scale_variable(log_sin_jet(kPi * z, order), Complex(kPi, 0));
    Jet lg = flip_variable(log_gamma_jet(Complex(1, 0) - z, order));
    Jet out(order);
    out -= ls;
    out -= lg;
    out[0] += std::log(kPi);
    return out;
  }
  int shift = 0;
  if (z.real() < 12.0L)
    shift = static_cast<int>(std::ceil(12.0L - z.real()));
  Jet out = log_gamma_stirling(z + static_cast<Real>(shift), order);
  const Jet zj = Jet::variable(z, order);
  for (int i = 0; i < shift; ++i) {
    Jet zi = zj;
    zi[0] += static_cast<Real>(i);
    out -= log(zi);
  }
  return out;
}

Complex log_gamma(const Complex& s) { return log_gamma_jet(s, 0)[0]; }

Complex gamma_fn(const Complex& s) {
  if (is_real_integer(s) && s.real() <= 0)
    raise(ErrorCode::PoleAtNonPositiveInteger,
          "Gamma has a pole at " + std::to_string(static_cast<double>(s.real())));
  return std::exp(log_gamma(s));
}

Jet chi_jet(const Complex& s, int order) {
  if (is_real_integer(s) && s.real() >= 1 &&
      static_cast<long long>(s.real()) % 2 != 0)
    raise(ErrorCode::PoleHit,
          "chi has a pole at s = " + std::to_string(static_cast<double>(s.real())));

  const Jet sj = Jet::variable(s, order);
  if (s.real() > 0.5L) {
    // chi(s) = (2 pi)^s / (2 Gamma(s) cos(pi s / 2)); poles screened above.
    // log cos(pi s/2) = log sin(pi/2 - pi s/2), inner derivative -pi/2.
    Jet lc = scale_variable(log_sin_jet(kPi / 2 - kPi / 2 * s, order),
                            Complex(-kPi / 2, 0));
    Jet L = sj * Complex(kLog2Pi, 0);
    L[0] -= std::log(2.0L);
    L -= log_gamma_jet(s, order);
    L -= lc;
    return exp(L);
  }
  // chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s)
  Jet pref = sj * Complex(std::log(2.0L) + std::log(kPi), 0);
  pref[0] -= std::log(kPi);
  Jet gam = exp(flip_variable(log_gamma_jet(Complex(1, 0) - s, order)));
  if (std::fabs(s.imag()) <= 1.5L) {
    // direct sine jet: keeps the trivial zeros of chi representable
    Jet arg = Jet::variable(s, order) * Complex(kPi / 2, 0);
    return exp(pref) * sin(arg) * gam;
  }
  Jet ls = scale_variable(log_sin_jet(kPi / 2 * s, order), Complex(kPi / 2, 0));
  return exp(pref + ls) * gam;
}

Complex chi_fn(const Complex& s) { return chi_jet(s, 0)[0]; }

// ---------------------------------------------------------------------------
// Euler-Maclaurin
// ---------------------------------------------------------------------------

namespace {

// Bound |R^{(j)}| for the Euler-Maclaurin remainder after kEmBernoulliTerms
// corrections:  R(s) = -((s)_{2nu+1}/(2nu+1)!) Int_N^inf  Btilde_{2nu+1}(x)
// x^{-s-2nu-1} dx.  Differentiating j times in s and using
// |Btilde_{2nu+1}| <= 2 zeta(2nu+1) (2nu+1)!/(2pi)^{2nu+1} gives computable
// incomplete-gamma style integrals I_b = Int_N^inf (log x)^b x^{-c-1} dx with
// the exact recursion I_b = (log N)^b N^{-c}/c + (b/c) I_{b-1}.
std::vector<Real> em_remainder_bounds(const Complex& s, long N, int order) {
  const int nu = kEmBernoulliTerms;
  std::vector<Real> out(static_cast<std::size_t>(order) + 1,
                        std::numeric_limits<Real>::infinity());
  const Real c = s.real() + 2 * nu;
  if (c <= 0.5L) return out;

  Jet rising = Jet::constant(Complex(1, 0), order);
  for (int i = 0; i <= 2 * nu; ++i) rising.mul_linear(s + static_cast<Real>(i));

  const Real kfac = 2.01L * std::pow(kTwoPi, static_cast<Real>(-(2 * nu + 1)));
  const Real logN = std::log(static_cast<Real>(N));
  std::vector<Real> integral(static_cast<std::size_t>(order) + 1, 0);
  const Real base = std::exp(-c * logN) / c;
  integral[0] = base;
  Real logN_pow = 1;
  for (int b = 1; b <= order; ++b) {
    logN_pow *= logN;
    integral[static_cast<std::size_t>(b)] =
        logN_pow * base + (static_cast<Real>(b) / c) * integral[static_cast<std::size_t>(b - 1)];
  }
  for (int j = 0; j <= order; ++j) {
    Real acc = 0;
    for (int i = 0; i <= j; ++i) {
      const Real pabs = std::abs(rising[i]) * factorial(i);
      acc += binomial(j, i) * pabs * kfac * integral[static_cast<std::size_t>(j - i)];
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

// crude magnitude proxy for zeta^{(j)}(s), used to pick best-effort targets
Real zeta_scale_estimate(const Complex& s, int order) {
  const Real sigma = s.real();
  const Real q = std::fabs(s.imag()) / kTwoPi + 2.0L;
  Real base = 6;
  if (sigma < 0.5L) base *= std::pow(q, 0.5L - sigma);
  const Real logf = 2.0L + std::log(q);
  return base * std::pow(logf, static_cast<Real>(order));
}

ZetaJet euler_maclaurin_jet(const Complex& s, int order, Real target) {
  const Real t = s.imag();
  Real aim = target;
  long n_cap = kEmMaxN;
  if (aim <= 0) {
    aim = 1e-17L * zeta_scale_estimate(s, order) + 1e-17L;
    n_cap = std::min<long>(kEmMaxN,
                           8 * std::max<long>(20, static_cast<long>(1.3L * std::fabs(t))) + 4000);
  }

  long N = std::max<long>(20, static_cast<long>(std::ceil(1.3L * std::fabs(t))));
  std::vector<Real> trunc;
  for (;;) {
    trunc = em_remainder_bounds(s, N, order);
    const Real worst = *std::max_element(trunc.begin(), trunc.end());
    if (worst <= 0.5L * aim) break;
    if (N >= n_cap) {
      if (target > 0)
        raise(ErrorCode::PrecisionUnreachable,
              "Euler-Maclaurin remainder bound cannot meet the requested accuracy");
      break;  // best effort: accept what the cap gives
    }
    N = std::min<long>(n_cap, static_cast<long>(N * 1.4L) + 16);
  }

  const std::size_t m = static_cast<std::size_t>(order) + 1;
  std::vector<Complex> acc(m, Complex{}), comp(m, Complex{});  // Kahan pairs
  std::vector<Real> abs_sum(m, 0);

  auto kahan_add = [&](std::size_t j, const Complex& x) {
    const Complex y = x - comp[j];
    const Complex t2 = acc[j] + y;
    comp[j] = (t2 - acc[j]) - y;
    acc[j] = t2;
  };

  const Real sigma = s.real();
  kahan_add(0, Complex(1, 0));  // n = 1 contributes only to order 0
  abs_sum[0] += 1;
  for (long n = 2; n < N; ++n) {
    const Real ln = std::log(static_cast<Real>(n));
    const Real r = std::exp(-sigma * ln);
    const Real ph = -t * ln;
    Complex cur(r * std::cos(ph), r * std::sin(ph));
    Real cur_abs = r;
    kahan_add(0, cur);
    abs_sum[0] += cur_abs;
    for (int j = 1; j <= order; ++j) {
      const Real f = -ln / static_cast<Real>(j);
      cur *= f;
      cur_abs *= std::fabs(f);
      kahan_add(static_cast<std::size_t>(j), cur);
      abs_sum[static_cast<std::size_t>(j)] += cur_abs;
    }
  }

  const Real lnN = std::log(static_cast<Real>(N));
  const Jet sj = Jet::variable(s, order);
  const Jet npow = exp(sj * Complex(-lnN, 0));  // N^{-s} jet

  auto add_jet = [&](const Jet& j) {
    for (int i = 0; i <= order; ++i) {
      kahan_add(static_cast<std::size_t>(i), j[i]);
      abs_sum[static_cast<std::size_t>(i)] += abs1(j[i]);
    }
  };

  {
    Jet den = sj;
    den[0] -= Real(1);
    add_jet((npow * static_cast<Real>(N)) / den);  // N^{1-s}/(s-1)
    add_jet(npow * 0.5L);                          // N^{-s}/2
  }
  {
    const auto& bern = bernoulli_even();
    Jet rising = Jet::constant(Complex(1, 0), order);
    rising.mul_linear(s);  // (s)_1
    Real fact2j = 2;       // (2j)!
    Real npow_scalar = 1.0L / static_cast<Real>(N);  // N^{1-2j}
    for (int j = 1; j <= kEmBernoulliTerms; ++j) {
      if (j > 1) {
        fact2j *= static_cast<Real>(2 * j - 1) * static_cast<Real>(2 * j);
        npow_scalar /= static_cast<Real>(N) * static_cast<Real>(N);
        rising.mul_linear(s + static_cast<Real>(2 * j - 3));
        rising.mul_linear(s + static_cast<Real>(2 * j - 2));
      }
      const Real coeff = bern[static_cast<std::size_t>(j)] / fact2j * npow_scalar;
      add_jet((rising * npow) * coeff);
    }
  }

  // acc[j] holds the Taylor coefficient zeta^{(j)}(s)/j!; trunc[j] bounds the
  // derivative-level remainder |R^{(j)}|, rounding is coefficient-level.
  ZetaJet result(order);
  for (int j = 0; j <= order; ++j) {
    result.jet[j] = acc[static_cast<std::size_t>(j)];
    const Real rounding = 6 * kMachineEps * abs_sum[static_cast<std::size_t>(j)];
    result.deriv_err[static_cast<std::size_t>(j)] =
        (trunc[static_cast<std::size_t>(j)] + rounding * factorial(j)) * 1.05L;
  }
  if (target > 0) {
    for (int j = 0; j <= order; ++j)
      if (result.deriv_err[static_cast<std::size_t>(j)] > target)
        raise(ErrorCode::PrecisionUnreachable,
              "achieved error bound exceeds the requested accuracy");
  }
  return result;
}

ZetaJet reflected_jet(const Complex& s, int order, Real target) {
  const Jet chi = chi_jet(s, order);
  const Complex w = Complex(1, 0) - s;
  Real target_y = target;
  if (target > 0) {
    const Real chi_scale = std::max<Real>(1, chi.max_abs());
    target_y = target / (4 * static_cast<Real>(order + 1) * chi_scale);
    target_y = std::max(target_y, 1e-4930L);
  }
  ZetaJet y = euler_maclaurin_jet(w, order, target_y > 0 ? target_y : -1);
  Jet yflip = flip_variable(y.jet);

  ZetaJet out(order);
  out.jet = chi * yflip;
  const Real rel_chi = 3e-18L * static_cast<Real>(order + 2);
  for (int j = 0; j <= order; ++j) {
    Real err = 0;
    for (int i = 0; i <= j; ++i) {
      const Real chi_abs = std::abs(chi[i]);
      err += chi_abs * (y.deriv_err[static_cast<std::size_t>(j - i)] / factorial(j - i));
      err += rel_chi * chi_abs * std::abs(yflip[j - i]);
    }
    out.deriv_err[static_cast<std::size_t>(j)] = err * factorial(j) * 1.25L;
  }
  if (target > 0) {
    for (int j = 0; j <= order; ++j)
      if (out.deriv_err[static_cast<std::size_t>(j)] > target)
        raise(ErrorCode::PrecisionUnreachable,
              "reflection error bound exceeds the requested accuracy");
  }
  return out;
}

}  // namespace

ZetaJet zeta_jet(const Complex& s, int order, Real target_abs_err) {
  if (order < 0 || order > kMaxInternalOrder)
    raise(ErrorCode::InvalidArgument,
          "derivative order must lie in [0, " + std::to_string(kMaxInternalOrder) + "]");
  if (!is_finite(s)) raise(ErrorCode::InvalidArgument, "non-finite evaluation point");
  if (s == Complex(1, 0)) raise(ErrorCode::PoleAt1, "zeta has its pole at s = 1");
  if (std::fabs(s.imag()) > kMaxHeight)
    raise(ErrorCode::RangeExceeded, "|Im s| exceeds the validated height range");
  if (s.real() < -5.0L) return reflected_jet(s, order, target_abs_err);
  return euler_maclaurin_jet(s, order, target_abs_err);
}

Complex zeta_derivative(const EvalRequest& req) {
  if (req.k < 0 || req.k > kMaxDerivativeOrder)
    raise(ErrorCode::InvalidArgument, "derivative order k must lie in [0, 20]");
  if (req.target_abs_err < kMinTargetAbsErr)
    raise(ErrorCode::InvalidArgument, "target_abs_err must be >= 1e-13");
  return zeta_jet(req.s, req.k, req.target_abs_err).derivative(req.k);
}

}  // namespace zplab
