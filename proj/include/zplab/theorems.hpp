#pragma once

#include <map>
#include <string>
#include <vector>

#include "zplab/dirichlet.hpp"
#include "zplab/expression.hpp"
#include "zplab/zero_finder.hpp"

namespace zplab {

// Statistics over located zeros compared against their predicted values:
// Riemann-von Mangoldt-type counts, beta-sums, clustering around the
// critical line, Landau-type power sums and Weyl equidistribution data.

enum class TheoremId { T1, T2, T3, T4, T5, T6, C7 };
enum class Verdict { Pass, Fail, Inconclusive };

const char* theorem_id_name(TheoremId id);
const char* verdict_name(Verdict v);

struct VerificationReport {
  TheoremId theorem_id{};
  std::map<std::string, Real> params;
  Complex predicted{};
  Complex measured{};
  Real discrepancy = 0;   // |predicted - measured|
  Real tolerance = 0;
  Verdict verdict = Verdict::Inconclusive;
  long zero_count = 0;
  double runtime_ms = 0;
};

std::string report_to_json(const VerificationReport& rep);

// all big-O constants are non-effective; these defaults make classical-zeta
// ground truth pass with comfortable margin
struct ToleranceConfig {
  Real count_ctol = 3;    // counting: C * log T
  Real beta_ctol = 10;    // beta-sums: C * U / log T
  Real cluster_ctol = 5;  // clustering ratio ceiling
  Real power_ctol = 5;    // power sums: C * log T
};

// bounds + located zeros for a horizontal band, shareable across checks
struct ZeroBand {
  Real t_lo = 0, t_hi = 0;
  Real E1 = 0, E2 = 0;  // empirical left / certified right abscissas
  Rectangle rect;
  std::vector<ZeroRecord> zeros;
};

ZeroBand locate_band(const FExpression& expr, Real t_lo, Real t_hi,
                     const LocateOptions& opts = {});

// deg1 * (T/2pi) log(T/(2pi e)) - (T/2pi) log n_F
Real predict_count(const FExpression& expr, Real T);

VerificationReport verify_count(const FExpression& expr, Real T,
                                const ToleranceConfig& tol = {},
                                const LocateOptions& opts = {});
VerificationReport verify_beta_sum(const FExpression& expr, Real T, Real U,
                                   const ToleranceConfig& tol = {},
                                   const LocateOptions& opts = {});
VerificationReport verify_clustering(const FExpression& expr, Real T, Real U,
                                     Real delta, const ToleranceConfig& tol = {},
                                     const LocateOptions& opts = {});
VerificationReport verify_power_sum(const FExpression& expr, const Rational& x,
                                    Real T, const ToleranceConfig& tol = {},
                                    const LocateOptions& opts = {});

// variants over an already-located band (the band must cover the range)
VerificationReport verify_beta_sum(const FExpression& expr, const ZeroBand& band,
                                   Real T, Real U, const ToleranceConfig& tol = {});
VerificationReport verify_clustering(const FExpression& expr, const ZeroBand& band,
                                     Real T, Real U, Real delta,
                                     const ToleranceConfig& tol = {});
VerificationReport verify_power_sum(const FExpression& expr, const ZeroBand& band,
                                    const Rational& x, Real T,
                                    const ToleranceConfig& tol = {});

struct WeylStatistics {
  Real alpha = 0;
  int m_range = 0;
  std::vector<Complex> weyl_sums;  // S_m = (1/N) sum e^{2 pi i m alpha gamma}, m = 1..m_range
  Real star_discrepancy = 0;       // D* of {alpha gamma mod 1}
};

WeylStatistics weyl_statistics(const std::vector<ZeroRecord>& zeros, Real alpha,
                               int m_max);

// star discrepancy of arbitrary points mod one (sorted-points formula)
Real star_discrepancy(std::vector<Real> points_mod_one);

}  // namespace zplab
