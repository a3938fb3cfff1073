#include "surromix/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace surromix::scaling {

namespace {

constexpr double kBetaMin = 0.01;
constexpr double kBetaMax = 4.0;
constexpr int kBetaGridSize = 200;

struct AbFit {
  double a = 0.0;
  double b = 0.0;
  double sse = 0.0;
};

// Non-negative least squares for loss ~ A + B * x over two coefficients:
// the unconstrained solution if it is feasible, otherwise the best of the
// clamped edge solutions.
AbFit nnls_ab(const std::vector<LossPoint>& pts,
              const std::vector<double>& x) {
  const double N = double(pts.size());
  double sx = 0.0, sxx = 0.0, sl = 0.0, slx = 0.0, sll = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sx += x[i];
    sxx += x[i] * x[i];
    sl += pts[i].loss;
    slx += pts[i].loss * x[i];
    sll += pts[i].loss * pts[i].loss;
  }
  auto sse_of = [&](double a, double b) {
    // ||l - a - b x||^2 expanded through the accumulated moments.
    return sll + N * a * a + b * b * sxx - 2.0 * a * sl - 2.0 * b * slx +
           2.0 * a * b * sx;
  };

  AbFit best;
  best.a = std::max(0.0, sl / N);
  best.b = 0.0;
  best.sse = sse_of(best.a, best.b);

  const double det = N * sxx - sx * sx;
  if (det > 0.0) {
    const double a = (sl * sxx - slx * sx) / det;
    const double b = (N * slx - sl * sx) / det;
    if (a >= 0.0 && b >= 0.0) {
      const double sse = sse_of(a, b);
      if (sse < best.sse) best = {a, b, sse};
    }
  }
  if (sxx > 0.0) {
    const double b = std::max(0.0, slx / sxx);
    const double sse = sse_of(0.0, b);
    if (sse < best.sse) best = {0.0, b, sse};
  }
  return best;
}

AbFit fit_at_beta(const std::vector<LossPoint>& pts, double beta,
                  std::vector<double>& x) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    x[i] = std::pow(double(pts[i].n), -beta);
  }
  return nnls_ab(pts, x);
}

double golden_section(const std::function<double(double)>& f, double lo,
                      double hi, int iters) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

double original_excess(const ScalingLawModel& model, std::int64_t n) {
  return model.original_fit.coefficient *
         std::pow(double(n), -model.original_fit.exponent);
}

double surrogate_excess_above_gap(const ScalingLawModel& model,
                                  std::int64_t m) {
  return model.surrogate_fit.coefficient *
         std::pow(double(m), -model.surrogate_fit.exponent);
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<LossPoint>& points) {
  std::set<std::int64_t> distinct;
  for (const LossPoint& p : points) {
    if (p.n < 1) {
      throw Error(Errc::invalid_argument, "sample sizes must be >= 1");
    }
    if (!std::isfinite(p.loss)) {
      throw Error(Errc::invalid_argument, "losses must be finite");
    }
    distinct.insert(p.n);
  }
  if (distinct.size() < 4) {
    throw Error(Errc::too_few_points,
                "power-law fit needs at least 4 distinct sample sizes");
  }

  double lo = points[0].loss, hi = points[0].loss;
  for (const LossPoint& p : points) {
    lo = std::min(lo, p.loss);
    hi = std::max(hi, p.loss);
  }
  if (hi - lo <= 1e-12) {
    PowerLawFit flat;
    double mean = 0.0;
    for (const LossPoint& p : points) mean += p.loss / double(points.size());
    flat.asymptote = std::max(0.0, mean);
    flat.coefficient = 0.0;
    flat.exponent = 1.0;
    flat.residual = 0.0;
    flat.degenerate = true;
    return flat;
  }

  std::vector<double> x(points.size());
  const double log_lo = std::log(kBetaMin), log_hi = std::log(kBetaMax);
  double best_beta = kBetaMin;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kBetaGridSize; ++i) {
    const double beta =
        std::exp(log_lo + (log_hi - log_lo) * double(i) / (kBetaGridSize - 1));
    const double sse = fit_at_beta(points, beta, x).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_beta = beta;
    }
  }

  // Refine inside the bracket formed by the neighbouring grid points,
  // working in log(beta) so the bracket width is scale-free.
  const double step = (log_hi - log_lo) / (kBetaGridSize - 1);
  const double bl = std::max(log_lo, std::log(best_beta) - step);
  const double bh = std::min(log_hi, std::log(best_beta) + step);
  const double refined_log = golden_section(
      [&](double lb) { return fit_at_beta(points, std::exp(lb), x).sse; }, bl,
      bh, 80);
  const double refined = std::exp(refined_log);
  {
    const double sse = fit_at_beta(points, refined, x).sse;
    if (sse < best_sse) {
      best_beta = refined;
      best_sse = sse;
    }
  }
  const AbFit ab = fit_at_beta(points, best_beta, x);
  PowerLawFit fit;
  fit.asymptote = ab.a;
  fit.coefficient = ab.b;
  fit.exponent = best_beta;
  fit.residual = std::sqrt(std::max(0.0, ab.sse) / double(points.size()));
  fit.validate();
  return fit;
}

ScalingLawModel build_model(const std::vector<LossPoint>& original_points,
                            const std::vector<LossPoint>& surrogate_points) {
  ScalingLawModel model;
  model.original_fit = fit_power_law(original_points);
  model.surrogate_fit = fit_power_law(surrogate_points);
  model.bayes_risk = model.original_fit.asymptote;
  const double gap =
      model.surrogate_fit.asymptote - model.original_fit.asymptote;
  model.gap_clamped = gap < 0.0;
  model.surrogate_gap = std::max(0.0, gap);
  model.beta = model.original_fit.exponent;
  model.validate();
  return model;
}

double predict_mixture_risk(const ScalingLawModel& model, std::int64_t n,
                            std::int64_t m, double alpha) {
  model.validate();
  MixtureConfig(alpha, 0.0);
  if (alpha < 1.0 && n < 1) {
    throw Error(Errc::bad_weight, "n = 0 requires alpha = 1");
  }
  if (alpha > 0.0 && m < 1) {
    throw Error(Errc::bad_weight, "m = 0 requires alpha = 0");
  }
  if (alpha == 0.0) {
    return model.bayes_risk + original_excess(model, n);
  }
  if (alpha == 1.0) {
    return model.bayes_risk + model.surrogate_gap +
           surrogate_excess_above_gap(model, m);
  }
  const double inv_beta = 1.0 / model.beta;
  const double bracket =
      alpha * alpha * std::pow(surrogate_excess_above_gap(model, m), inv_beta) +
      (1.0 - alpha) * (1.0 - alpha) *
          std::pow(original_excess(model, n), inv_beta);
  return model.bayes_risk + alpha * alpha * model.surrogate_gap +
         std::pow(bracket, model.beta);
}

oracles::AlphaRisk optimal_alpha(const ScalingLawModel& model, std::int64_t n,
                                 std::int64_t m) {
  auto risk_at = [&](double a) { return predict_mixture_risk(model, n, m, a); };

  constexpr int kGrid = 101;
  int best = 0;
  double best_risk = risk_at(0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double a = double(i) / (kGrid - 1);
    const double r = risk_at(a);
    if (r < best_risk) {
      best_risk = r;
      best = i;
    }
  }
  const double lo = std::max(0.0, (best - 1.0) / (kGrid - 1));
  const double hi = std::min(1.0, (best + 1.0) / (kGrid - 1));
  const double refined = golden_section(risk_at, lo, hi, 80);

  oracles::AlphaRisk out{refined, risk_at(refined)};
  // Keep whichever of {grid best, refined, endpoints} is lowest, so the
  // result never loses to a coarse scan.
  const double grid_alpha = double(best) / (kGrid - 1);
  if (best_risk < out.risk_star) out = {grid_alpha, best_risk};
  if (risk_at(0.0) < out.risk_star) out = {0.0, risk_at(0.0)};
  if (risk_at(1.0) < out.risk_star) out = {1.0, risk_at(1.0)};
  return out;
}

std::optional<std::int64_t> required_surrogate(const ScalingLawModel& model,
                                               std::int64_t n,
                                               double target_risk) {
  if (!std::isfinite(target_risk)) {
    throw Error(Errc::invalid_argument, "target risk must be finite");
  }
  constexpr std::int64_t kMaxM = 1000000000000LL;  // 1e12
  auto risk_at_m = [&](std::int64_t m) {
    return optimal_alpha(model, n, m).risk_star;
  };

  if (risk_at_m(1) <= target_risk) return 1;
  std::int64_t lo = 1, hi = 2;
  while (hi < kMaxM && risk_at_m(hi) > target_risk) {
    lo = hi;
    hi = std::min(kMaxM, hi * 2);
  }
  if (risk_at_m(hi) > target_risk) return std::nullopt;
  // Invariant: risk(lo) > target >= risk(hi); the optimal risk is
  // non-increasing in m, so the boundary is the minimal feasible m.
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (risk_at_m(mid) > target_risk ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace surromix::scaling
