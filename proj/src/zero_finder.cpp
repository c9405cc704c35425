#include "zplab/zero_finder.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>

#include "zplab/errors.hpp"
#include "zplab/evaluate.hpp"

namespace zplab {

namespace {

constexpr Real kMaxStepPhase = 1.4L;   // < pi/2 per-step arg increment
constexpr Real kMaxStepRatio = 6.0L;   // modulus swing forcing refinement
constexpr Real kMaxStepTravel = 0.8L;  // step_length * |F'/F| ceiling

struct EvalBudget {
  long remaining;
};

// Adaptive argument accumulation along a parameterized curve.  A step is
// accepted only when its endpoint phase-rates |F'/F| bound the possible
// phase travel below pi/2: that catches full 2*pi whirls hiding between two
// symmetric samples near an off-contour zero, which endpoint phases alone
// cannot see.  |F| collapsing relative to the coarse-level scale flags a
// boundary zero.
class ArgTracker {
 public:
  ArgTracker(std::function<Complex(Real)> point, const FExpression& expr,
             const WindingOptions& opts, EvalBudget& budget)
      : point_(std::move(point)), expr_(expr), opts_(opts), budget_(budget) {}

  struct Sample {
    Complex s;
    Complex f;
    Real rate;  // |F'/F|
  };

  Sample eval(Real u) {
    if (--budget_.remaining < 0)
      raise(ErrorCode::QuadratureUnstable, "evaluation budget exhausted on contour");
    const Complex s = point_(u);
    const FPair p = evaluate_F_pair(expr_, s);
    Sample out{s, p.f, 0};
    const Real af = std::abs(p.f);
    out.rate = (af > 0) ? std::abs(p.fprime) / af : std::numeric_limits<Real>::infinity();
    return out;
  }

  // total arg change over [u0, u1]; `scale` is the coarse-level |F| context
  // of the enclosing initial interval, so a zero on the path shows up as a
  // collapse against it rather than against its own shrinking bracket
  Real accumulate(Real u0, const Sample& p0, Real u1, const Sample& p1, int depth,
                  Real scale) {
    const Real a0 = std::abs(p0.f), a1 = std::abs(p1.f);
    check_dip(p0.f, scale);
    check_dip(p1.f, scale);
    const Real dphi = std::arg(p1.f * std::conj(p0.f));
    const Real ratio = (a0 < a1) ? a1 / a0 : a0 / a1;
    const Real travel = std::abs(p1.s - p0.s) * std::max(p0.rate, p1.rate);
    if (std::fabs(dphi) <= kMaxStepPhase && ratio <= kMaxStepRatio &&
        travel <= kMaxStepTravel)
      return dphi;
    if (depth >= opts_.max_depth) {
      if (std::min(a0, a1) < 1e-4L * scale)
        raise(ErrorCode::BoundaryZeroSuspected,
              "refinement exhausted over a collapsing |F| on the contour");
      raise(ErrorCode::QuadratureUnstable, "argument step cannot be refined below pi/2");
    }
    const Real um = (u0 + u1) / 2;
    const Sample pm = eval(um);
    return accumulate(u0, p0, um, pm, depth + 1, scale) +
           accumulate(um, pm, u1, p1, depth + 1, scale);
  }

  Real walk(int initial_samples) {
    initial_samples = std::max(initial_samples, 8);
    std::vector<Sample> f(static_cast<std::size_t>(initial_samples) + 1);
    for (int i = 0; i <= initial_samples; ++i)
      f[static_cast<std::size_t>(i)] = eval(static_cast<Real>(i) / initial_samples);
    Real total = 0;
    for (int i = 0; i < initial_samples; ++i) {
      const Sample& p0 = f[static_cast<std::size_t>(i)];
      const Sample& p1 = f[static_cast<std::size_t>(i + 1)];
      total += accumulate(static_cast<Real>(i) / initial_samples, p0,
                          static_cast<Real>(i + 1) / initial_samples, p1, 0,
                          std::max(std::abs(p0.f), std::abs(p1.f)));
    }
    return total;
  }

 private:
  void check_dip(const Complex& f, Real local_scale) const {
    const Real a = std::abs(f);
    if (!is_finite(f))
      raise(ErrorCode::QuadratureUnstable, "non-finite F value on contour");
    if (a == 0 || a < opts_.dip_threshold * local_scale)
      raise(ErrorCode::BoundaryZeroSuspected, "|F| dip on the contour");
  }

  std::function<Complex(Real)> point_;
  const FExpression& expr_;
  const WindingOptions& opts_;
  EvalBudget& budget_;
};

int snap_integer(Real total_arg, Real snap_tol) {
  const Real w = total_arg / kTwoPi;
  const Real r = std::round(w);
  if (std::fabs(w - r) > snap_tol)
    raise(ErrorCode::QuadratureUnstable,
          "winding number " + std::to_string(static_cast<double>(w)) +
              " is not within snap tolerance of an integer");
  return static_cast<int>(r);
}

int degrees_hint(const FExpression& expr) {
  int deg = 1;
  for (const auto& m : expr.monomials()) deg = std::max(deg, m.total_degree());
  return deg;
}

int edge_samples(const FExpression& expr, Real length, Real t_scale) {
  const Real deg = 1 + static_cast<Real>(degrees_hint(expr));
  const Real rate = deg * (1.0L + std::log(1.0L + std::fabs(t_scale)));
  const Real n = length * rate * 0.9L + 8;
  return static_cast<int>(std::min<Real>(n, 200000));
}

void validate_rectangle(const Rectangle& r, const WindingOptions& opts) {
  if (!(r.sigma_lo < r.sigma_hi) || !(r.t_lo < r.t_hi))
    raise(ErrorCode::InvalidArgument, "rectangle must have positive extent");
  if (!opts.allow_pole && r.contains(Complex(1, 0)))
    raise(ErrorCode::InvalidArgument,
          "rectangle contains the pole at s = 1 (counts would be zeros minus pole order)");
}

Real rectangle_arg(const FExpression& expr, const Rectangle& r,
                   const WindingOptions& opts, EvalBudget& budget) {
  const Complex c0(r.sigma_lo, r.t_lo), c1(r.sigma_hi, r.t_lo);
  const Complex c2(r.sigma_hi, r.t_hi), c3(r.sigma_lo, r.t_hi);
  const Real t_scale = std::max(std::fabs(r.t_lo), std::fabs(r.t_hi));
  Real total = 0;
  const std::array<std::pair<Complex, Complex>, 4> edges{
      std::pair{c0, c1}, {c1, c2}, {c2, c3}, {c3, c0}};
  for (const auto& [a, b] : edges) {
    ArgTracker tracker(
        [a, b](Real u) { return a + (b - a) * u; }, expr, opts, budget);
    total += tracker.walk(edge_samples(expr, std::abs(b - a), t_scale));
  }
  return total;
}

}  // namespace

int winding_count(const FExpression& expr, const Rectangle& rect,
                  const WindingOptions& opts) {
  if (expr.is_zero())
    raise(ErrorCode::InvalidArgument, "winding of the zero polynomial is undefined");
  validate_rectangle(rect, opts);
  EvalBudget budget{opts.max_evals};
  return snap_integer(rectangle_arg(expr, rect, opts, budget), opts.snap_tol);
}

int trivial_cluster_count(const FExpression& expr, int n, Real epsilon,
                          const WindingOptions& opts) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "n must be >= 1");
  if (epsilon <= 0 || epsilon >= 1)
    raise(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  const Complex center(-2.0L * n, 0);
  const std::array<Real, 5> nudges{1.0L, 1.05L, 0.95L, 1.10L, 0.90L};
  for (std::size_t attempt = 0; attempt < nudges.size(); ++attempt) {
    const Real r = epsilon * nudges[attempt];
    EvalBudget budget{opts.max_evals};
    ArgTracker tracker(
        [center, r](Real u) {
          return center + Complex(r * std::cos(kTwoPi * u), r * std::sin(kTwoPi * u));
        },
        expr, opts, budget);
    try {
      const int samples = 48 + 16 * degrees_hint(expr);
      return snap_integer(tracker.walk(samples), opts.snap_tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundaryZeroSuspected || attempt + 1 == nudges.size())
        throw;
    }
  }
  raise(ErrorCode::BoundaryZeroSuspected, "cluster circle keeps hitting zeros");
}

// ---------------------------------------------------------------------------
// locate_zeros: quadrisection + Newton refinement
// ---------------------------------------------------------------------------

namespace {

struct LocateContext {
  const FExpression& expr;
  const LocateOptions& opts;
  std::atomic<std::size_t> boxes_done{0};

  LocateContext(const FExpression& e, const LocateOptions& o) : expr(e), opts(o) {}

  void tick() {
    const std::size_t done = ++boxes_done;
    if (opts.progress && done % 16 == 0) opts.progress(done);
  }
};

int child_winding(LocateContext& ctx, const Rectangle& r) {
  EvalBudget budget{ctx.opts.winding.max_evals};
  return snap_integer(rectangle_arg(ctx.expr, r, ctx.opts.winding, budget),
                      ctx.opts.winding.snap_tol);
}

int circle_winding(LocateContext& ctx, const Complex& center, Real radius) {
  EvalBudget budget{ctx.opts.winding.max_evals};
  ArgTracker tracker(
      [center, radius](Real u) {
        return center + Complex(radius * std::cos(kTwoPi * u),
                                radius * std::sin(kTwoPi * u));
      },
      ctx.expr, ctx.opts.winding, budget);
  return snap_integer(tracker.walk(32), ctx.opts.winding.snap_tol);
}

// |F|-minimization fallback: coarse grid, then contraction around the best
// cell; every contraction stays inside the original box (the zero is
// certified to lie there by the winding count)
Complex bisection_in_box(LocateContext& ctx, const Rectangle& box) {
  Rectangle b = box;
  Complex best{};
  for (int round = 0; round < 60; ++round) {
    Real best_val = std::numeric_limits<Real>::infinity();
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; j <= 6; ++j) {
        const Complex s(b.sigma_lo + b.width() * i / 6.0L,
                        b.t_lo + b.height() * j / 6.0L);
        const Real v = std::abs(evaluate_F_auto(ctx.expr, s).value);
        if (v < best_val) {
          best_val = v;
          best = s;
        }
      }
    const Real w = b.width() * 0.3L, h = b.height() * 0.3L;
    if (w < 1e-13L && h < 1e-13L) break;
    b = Rectangle{std::max(box.sigma_lo, best.real() - w / 2),
                  std::min(box.sigma_hi, best.real() + w / 2),
                  std::max(box.t_lo, best.imag() - h / 2),
                  std::min(box.t_hi, best.imag() + h / 2)};
  }
  return best;
}

ZeroRecord refine_zero(LocateContext& ctx, const Rectangle& box, int multiplicity) {
  const Real diag = std::hypot(box.width(), box.height());
  Complex s(box.sigma_lo + box.width() / 2, box.t_lo + box.height() / 2);
  Real last_step = diag;
  bool converged = false;
  for (int it = 0; it < ctx.opts.newton_max_iter; ++it) {
    const FPair p = evaluate_F_pair(ctx.expr, s);
    if (p.fprime == Complex{} || !is_finite(p.fprime) || !is_finite(p.f)) break;
    const Complex step = static_cast<Real>(multiplicity) * p.f / p.fprime;
    s -= step;
    last_step = std::abs(step);
    if (std::abs(s - Complex(box.sigma_lo + box.width() / 2,
                             box.t_lo + box.height() / 2)) > 4 * diag + 0.5L)
      break;  // ran away: fall back to |F| minimization
    if (last_step < ctx.opts.newton_step_tol) {
      converged = true;
      break;
    }
  }
  if (!converged || !box.contains(s)) {
    // NewtonDiverged path: bisection-in-box on |F|
    s = bisection_in_box(ctx, box);
    last_step = 1e-12L;
  }

  ZeroRecord rec;
  rec.rho = s;
  rec.multiplicity = multiplicity;
  rec.residual = std::abs(evaluate_F_auto(ctx.expr, s).value);

  // the certification circle must enclose the whole (possibly unresolved)
  // cluster, so never start below the cluster resolution for multiple zeros
  Real r = std::max<Real>(1e-8L, 64 * last_step);
  if (multiplicity > 1) r = std::max(r, 2 * ctx.opts.cluster_resolution);
  r = std::min<Real>(r, 0.05L);
  bool certified = false;
  for (int attempt = 0; attempt < 5 && !certified; ++attempt) {
    try {
      certified = (circle_winding(ctx, s, r) == multiplicity);
      if (!certified) r *= 3.0L;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundaryZeroSuspected) throw;
      r *= 1.37L;
    }
  }
  if (!certified)
    raise(ErrorCode::QuadratureUnstable,
          "could not certify the multiplicity of a refined zero");
  rec.box_radius = r;
  if (rec.residual > ctx.opts.residual_tol)
    raise(ErrorCode::QuadratureUnstable, "refined zero has residual above tolerance");
  return rec;
}

// subdivide single-zero boxes down to this size before seeding Newton from
// the centroid; keeps the seed inside the zero's basin of attraction
constexpr Real kNewtonSeedDiag = 0.08L;

std::vector<ZeroRecord> locate_recurse(LocateContext& ctx, const Rectangle& rect,
                                       int count, int depth) {
  std::vector<ZeroRecord> out;
  if (count == 0) {
    ctx.tick();
    return out;
  }
  const Real diag = std::hypot(rect.width(), rect.height());
  if ((count == 1 && diag <= kNewtonSeedDiag) || diag < ctx.opts.cluster_resolution) {
    out.push_back(refine_zero(ctx, rect, count));
    ctx.tick();
    return out;
  }

  static constexpr std::array<Real, 5> kNudges{0.0L, 1e-3L, -1e-3L, 2e-3L, -2e-3L};
  for (std::size_t attempt = 0; attempt < kNudges.size(); ++attempt) {
    const Real sm = rect.sigma_lo + rect.width() * (0.5L + kNudges[attempt]);
    const Real tm = rect.t_lo + rect.height() * (0.5L + kNudges[attempt]);
    const std::array<Rectangle, 4> kids{
        Rectangle{rect.sigma_lo, sm, rect.t_lo, tm},
        Rectangle{sm, rect.sigma_hi, rect.t_lo, tm},
        Rectangle{rect.sigma_lo, sm, tm, rect.t_hi},
        Rectangle{sm, rect.sigma_hi, tm, rect.t_hi}};
    try {
      std::array<int, 4> counts{};
      int total = 0;
      for (std::size_t i = 0; i < 4; ++i) {
        counts[i] = child_winding(ctx, kids[i]);
        total += counts[i];
      }
      if (total != count) {
        if (attempt + 1 == kNudges.size())
          raise(ErrorCode::QuadratureUnstable,
                "child winding numbers do not sum to the parent count");
        continue;
      }
      const bool parallel = ctx.opts.threads > 1 && depth < 2;
      if (parallel) {
        std::array<std::future<std::vector<ZeroRecord>>, 4> futs;
        for (std::size_t i = 0; i < 4; ++i)
          futs[i] = std::async(std::launch::async, [&ctx, &kids, &counts, depth, i] {
            return locate_recurse(ctx, kids[i], counts[i], depth + 1);
          });
        for (auto& fu : futs) {
          auto part = fu.get();
          out.insert(out.end(), part.begin(), part.end());
        }
      } else {
        for (std::size_t i = 0; i < 4; ++i) {
          auto part = locate_recurse(ctx, kids[i], counts[i], depth + 1);
          out.insert(out.end(), part.begin(), part.end());
        }
      }
      ctx.tick();
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundaryZeroSuspected || attempt + 1 == kNudges.size())
        throw;
      out.clear();
    }
  }
  raise(ErrorCode::BoundaryZeroSuspected, "split lines keep hitting zeros");
}

}  // namespace

std::vector<ZeroRecord> locate_zeros(const FExpression& expr, const Rectangle& rect,
                                     const LocateOptions& opts) {
  if (expr.is_zero())
    raise(ErrorCode::InvalidArgument, "cannot locate zeros of the zero polynomial");
  validate_rectangle(rect, opts.winding);
  LocateContext ctx(expr, opts);

  Rectangle r = rect;
  for (int attempt = 0;; ++attempt) {
    try {
      const int count = winding_count(expr, r, opts.winding);
      std::vector<ZeroRecord> zeros = locate_recurse(ctx, r, count, 0);
      std::sort(zeros.begin(), zeros.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
        if (a.gamma() != b.gamma()) return a.gamma() < b.gamma();
        return a.beta() < b.beta();
      });
      int with_multiplicity = 0;
      for (const auto& z : zeros) with_multiplicity += z.multiplicity;
      if (with_multiplicity != count)
        raise(ErrorCode::QuadratureUnstable,
              "located zeros do not add up to the winding count");
      return zeros;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BoundaryZeroSuspected || attempt >= 5) throw;
      // grow the rectangle outward by the deterministic offset and retry
      const Real d = 1e-3L * r.height() * static_cast<Real>(attempt + 1);
      r = Rectangle{r.sigma_lo - d, r.sigma_hi + d, r.t_lo - d, r.t_hi + d};
    }
  }
}

void write_zeros_csv(std::ostream& os, const std::vector<ZeroRecord>& zeros) {
  os << "beta,gamma,multiplicity,residual\n";
  char buf[160];
  for (const auto& z : zeros) {
    std::snprintf(buf, sizeof(buf), "%.15g,%.15g,%d,%.15g\n",
                  static_cast<double>(z.beta()), static_cast<double>(z.gamma()),
                  z.multiplicity, static_cast<double>(z.residual));
    os << buf;
  }
}

}  // namespace zplab
