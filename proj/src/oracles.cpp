#include "surromix/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "surromix/parallel.hpp"

namespace surromix::oracles {

namespace {

void check_mean_args(std::int64_t d, std::int64_t n, std::int64_t m,
                     double alpha, double gap) {
  MixtureConfig(alpha, 0.0);
  if (d < 1) throw Error(Errc::invalid_argument, "d must be >= 1");
  if (gap < 0.0 || !std::isfinite(gap)) {
    throw Error(Errc::invalid_argument, "gap must be >= 0");
  }
  if (alpha < 1.0 && n < 1) {
    throw Error(Errc::bad_weight, "n = 0 requires alpha = 1");
  }
  if (alpha > 0.0 && m < 1) {
    throw Error(Errc::bad_weight, "m = 0 requires alpha = 0");
  }
}

// ----------------------------------------------------------------------------
// Proportional-regime machinery.

struct Branch {
  double aspect = 0.0;    // delta or delta_s
  double variance = 0.0;  // tau^2 + sigma^2 of the branch
  double weight = 0.0;    // 1-alpha or alpha
};

// Scalar fixed point for the saddle radius rb, given both branches active.
double solve_rho_bar(const Branch& o, const Branch& s, double omega) {
  const double A = o.aspect * o.variance;
  const double As = s.aspect * s.variance;
  if (A <= 0.0 && As <= 0.0) {
    throw Error(Errc::invalid_argument,
                "both branch variances vanish; saddle radius undefined");
  }
  const double B = o.aspect / o.weight;
  const double Bs = s.aspect / s.weight;

  auto rhs = [&](double rb) {
    const double u = omega / rb;
    const double d1 = B + u, d2 = Bs + u;
    return A / (d1 * d1) + As / (d2 * d2);
  };

  if (omega == 0.0) {
    return std::sqrt(A / (B * B) + As / (Bs * Bs));
  }
  if (A + As <= omega * omega) {
    // rhs(rb) < rb^2 (A+As)/omega^2 <= rb^2 everywhere, so no positive
    // radius solves the equation. Unreachable from the risk minimization,
    // where tau^2 >= omega^2 forces A + As > omega^2.
    throw Error(Errc::invalid_argument,
                "no positive saddle radius: omega^2 exceeds the combined "
                "branch variances");
  }

  double rb = std::sqrt(o.variance / o.aspect + s.variance / s.aspect);
  bool converged = false;
  for (int it = 0; it < 10000; ++it) {
    const double next = 0.5 * rb + 0.5 * std::sqrt(rhs(rb));
    if (std::abs(next - rb) <= 1e-14 * std::max(1.0, rb)) {
      rb = next;
      converged = true;
      break;
    }
    rb = next;
  }

  auto residual = [&](double x) { return x * x - rhs(x); };

  if (!converged || std::abs(residual(rb)) > 1e-11) {
    // Bisection fallback on x^2 - rhs(x), which is negative near 0 and
    // positive for large x.
    double lo = 1e-12, hi = std::max(rb, 1.0);
    int guard = 0;
    while (residual(hi) <= 0.0 && guard++ < 200) hi *= 2.0;
    while (residual(lo) >= 0.0 && guard++ < 200) lo *= 0.5;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (residual(mid) < 0.0 ? lo : hi) = mid;
    }
    rb = 0.5 * (lo + hi);
  }

  // Newton polish drives the absolute residual to near machine precision.
  for (int it = 0; it < 8; ++it) {
    const double u = omega / rb;
    const double d1 = B + u, d2 = Bs + u;
    const double h = rb * rb - (A / (d1 * d1) + As / (d2 * d2));
    const double dh = 2.0 * rb - (2.0 * omega / (rb * rb)) *
                                     (A / (d1 * d1 * d1) + As / (d2 * d2 * d2));
    if (dh == 0.0) break;
    const double next = rb - h / dh;
    if (!(next > 0.0)) break;
    rb = next;
    if (std::abs(h) <= 1e-13) break;
  }

  const double res = std::abs(residual(rb));
  if (!(res <= 1e-10)) {
    throw NotConvergedError("saddle radius fixed point did not converge",
                            10000, 0.0, res);
  }
  return rb;
}

SaddlePoint saddle_two_branch(const Branch& o, const Branch& s, double omega) {
  SaddlePoint sp;
  sp.rho_bar = solve_rho_bar(o, s, omega);
  const double A = o.aspect * o.variance;
  const double As = s.aspect * s.variance;
  if (A > 0.0) {
    sp.t = (omega + o.aspect * sp.rho_bar / o.weight) /
           (omega + s.aspect * sp.rho_bar / s.weight) * std::sqrt(As / A);
    if (sp.t > 1e15) {
      sp.rho = 0.0;
      sp.rho_s = sp.rho_bar;
    } else {
      const double scale = std::sqrt(1.0 + sp.t * sp.t);
      sp.rho = sp.rho_bar / scale;
      sp.rho_s = sp.rho_bar * sp.t / scale;
    }
  } else {
    sp.t = std::numeric_limits<double>::infinity();
    sp.rho = 0.0;
    sp.rho_s = sp.rho_bar;
  }
  return sp;
}

struct TauPair {
  double tau2 = 0.0;
  double tau_s2 = 0.0;
};

TauPair taus_at(const HiDimSpec& spec, double xi, double xi_perp,
                double omega) {
  TauPair t;
  const double dxi = xi - spec.r;
  t.tau2 = dxi * dxi + xi_perp * xi_perp + omega * omega;
  const double axi = xi - spec.r_s * std::cos(spec.gamma);
  const double axp = xi_perp - spec.r_s * std::sin(spec.gamma);
  t.tau_s2 = axi * axi + axp * axp + omega * omega;
  return t;
}

// Objective value with only one data branch active (endpoint alpha). The
// inner maximum over the single dual radius is available in closed form.
double objective_single_branch(const HiDimSpec& spec, double aspect,
                               double variance, double xi, double xi_perp,
                               double omega) {
  const double a = aspect * variance;
  const double ridge =
      0.5 * spec.lambda * (xi * xi + xi_perp * xi_perp + omega * omega);
  const double rho = std::max(0.0, (std::sqrt(a) - omega) / aspect);
  return -omega * rho + rho * std::sqrt(a) - 0.5 * aspect * rho * rho + ridge;
}

double objective_impl(const HiDimSpec& spec, double alpha, double xi,
                      double xi_perp, double omega) {
  const TauPair tp = taus_at(spec, xi, xi_perp, omega);
  const double ridge =
      0.5 * spec.lambda * (xi * xi + xi_perp * xi_perp + omega * omega);
  if (alpha <= 0.0) {
    return objective_single_branch(spec, spec.delta,
                                   tp.tau2 + spec.sigma * spec.sigma, xi,
                                   xi_perp, omega);
  }
  if (alpha >= 1.0) {
    return objective_single_branch(spec, spec.delta_s,
                                   tp.tau_s2 + spec.sigma_s * spec.sigma_s, xi,
                                   xi_perp, omega);
  }
  const Branch o{spec.delta, tp.tau2 + spec.sigma * spec.sigma, 1.0 - alpha};
  const Branch s{spec.delta_s, tp.tau_s2 + spec.sigma_s * spec.sigma_s, alpha};
  const SaddlePoint sp = saddle_two_branch(o, s, omega);
  return -omega * sp.rho_bar + sp.rho * std::sqrt(o.aspect * o.variance) +
         sp.rho_s * std::sqrt(s.aspect * s.variance) -
         o.aspect * sp.rho * sp.rho / (2.0 * o.weight) -
         s.aspect * sp.rho_s * sp.rho_s / (2.0 * s.weight) + ridge;
}

using Point3 = std::array<double, 3>;

double simplex_diameter(const std::array<Point3, 4>& v) {
  double diam = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double d = v[i][k] - v[j][k];
        d2 += d * d;
      }
      diam = std::max(diam, std::sqrt(d2));
    }
  }
  return diam;
}

struct NmResult {
  Point3 x{};
  double f = 0.0;
};

// Deterministic Nelder-Mead on R^3 with standard coefficients.
NmResult nelder_mead3(const std::function<double(const Point3&)>& f, Point3 x0,
                      double step, double tol, int max_iter) {
  std::array<Point3, 4> v;
  std::array<double, 4> fv;
  v[0] = x0;
  for (int i = 0; i < 3; ++i) {
    v[i + 1] = x0;
    v[i + 1][i] += step;
  }
  for (int i = 0; i < 4; ++i) fv[i] = f(v[i]);

  std::array<int, 4> ord = {0, 1, 2, 3};
  auto sort_vertices = [&] {
    std::sort(ord.begin(), ord.end(),
              [&](int a, int b) { return fv[a] < fv[b]; });
  };

  for (int it = 0; it < max_iter; ++it) {
    sort_vertices();
    if (simplex_diameter(v) <= tol) break;

    const int best = ord[0], second = ord[2], worst = ord[3];
    Point3 centroid{};
    for (int i = 0; i < 4; ++i) {
      if (i == worst) continue;
      for (int k = 0; k < 3; ++k) centroid[k] += v[i][k] / 3.0;
    }
    auto affine = [&](double c) {
      Point3 p;
      for (int k = 0; k < 3; ++k) {
        p[k] = centroid[k] + c * (centroid[k] - v[worst][k]);
      }
      return p;
    };

    const Point3 xr = affine(1.0);
    const double fr = f(xr);
    if (fr < fv[best]) {
      const Point3 xe = affine(2.0);
      const double fe = f(xe);
      if (fe < fr) {
        v[worst] = xe;
        fv[worst] = fe;
      } else {
        v[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      v[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      const Point3 xc = affine(outside ? 0.5 : -0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[worst])) {
        v[worst] = xc;
        fv[worst] = fc;
      } else {
        for (int i = 0; i < 4; ++i) {
          if (i == best) continue;
          for (int k = 0; k < 3; ++k) {
            v[i][k] = v[best][k] + 0.5 * (v[i][k] - v[best][k]);
          }
          fv[i] = f(v[i]);
        }
      }
    }
  }
  sort_vertices();
  return {v[ord[0]], fv[ord[0]]};
}

}  // namespace

double mean_risk(std::int64_t d, std::int64_t n, std::int64_t m, double alpha,
                 double gap) {
  check_mean_args(d, n, m, alpha, gap);
  double risk = alpha * alpha * gap;
  if (alpha > 0.0) risk += alpha * alpha / double(m) * double(d);
  if (alpha < 1.0) {
    risk += (1.0 - alpha) * (1.0 - alpha) / double(n) * double(d);
  }
  return risk;
}

AlphaRisk mean_optimal_alpha(std::int64_t d, std::int64_t n, std::int64_t m,
                             double gap) {
  check_mean_args(d, n, m, 0.5, gap);
  const double over_n = double(d) / double(n);
  const double over_m = double(d) / double(m);
  AlphaRisk out;
  out.alpha_star = over_n / (gap + over_m + over_n);
  out.risk_star = (gap + over_m) / (gap + over_m + over_n) * over_n;
  return out;
}

double naive_pooled_risk(std::int64_t d, std::int64_t n, std::int64_t m,
                         double gap) {
  if (d < 1) throw Error(Errc::invalid_argument, "d must be >= 1");
  if (n < 0 || m < 0 || n + m < 1) {
    throw Error(Errc::invalid_argument, "n + m must be >= 1");
  }
  if (gap < 0.0 || !std::isfinite(gap)) {
    throw Error(Errc::invalid_argument, "gap must be >= 0");
  }
  const double frac = double(m) / double(n + m);
  return frac * frac * gap + double(d) / double(n + m);
}

SequenceRisk sequence_risk(const SequenceModelSpec& spec,
                           const MixtureConfig& config) {
  spec.validate();
  config.validate();
  const double alpha = config.alpha;
  const double lambda = config.lambda;
  SequenceRisk out;
  for (Eigen::Index k = 0; k < spec.dim(); ++k) {
    const double shrink = 1.0 / (1.0 + lambda * spec.omega[k]);
    // (alpha + lw) th - alpha th_s over (1 + lw), taken as a ratio before
    // squaring so huge eigenvalues give the finite limit th_k instead of
    // 0 * inf.
    const double b = shrink * alpha * (spec.theta_star[k] - spec.theta_star_s[k]) +
                     (1.0 - shrink) * spec.theta_star[k];
    out.bias += b * b;
    out.variance_count += shrink * shrink;
  }
  out.noise_scale =
      (1.0 - alpha) * (1.0 - alpha) * spec.sigma * spec.sigma / double(spec.n) +
      alpha * alpha * spec.sigma_s * spec.sigma_s / double(spec.m);
  out.risk = out.bias + out.noise_scale * out.variance_count;
  return out;
}

double sequence_lambda_star(const SequenceModelSpec& spec, double alpha) {
  spec.validate();
  MixtureConfig(alpha, 0.0);
  const double smooth = std::min(spec.mu, spec.rho_decay);
  const double beta = 2.0 * smooth / (1.0 + 2.0 * smooth);
  const double s =
      (1.0 - alpha) * (1.0 - alpha) * spec.sigma * spec.sigma / double(spec.n) +
      alpha * alpha * spec.sigma_s * spec.sigma_s / double(spec.m);
  // Cut at k1 ~ s^(beta-1) coordinates: balances the squared bias of the
  // discarded tail against s times the kept count. Clamp before rounding;
  // tiny s can push the target beyond the integer range.
  const double target = std::clamp(std::pow(s, beta - 1.0), 1.0,
                                   static_cast<double>(spec.dim()));
  const auto k1 = static_cast<Eigen::Index>(std::llround(target));
  const double omega_k1 = spec.omega[k1 - 1];
  if (omega_k1 <= 0.0) {
    throw Error(Errc::zero_eigenvalue,
                "selected penalty eigenvalue is zero; lambda undefined");
  }
  return 1.0 / omega_k1;
}

double nonparam_risk(const NonparamSpec& spec, double alpha) {
  spec.validate();
  MixtureConfig(alpha, 0.0);
  if (2.0 * spec.penalty_order <= spec.dim / 2.0) {
    throw Error(Errc::penalty_too_weak,
                "penalty_order must exceed dim/4 for a summable variance");
  }
  const double two_pi = 2.0 * std::acos(-1.0);
  const double p2 = 2.0 * spec.penalty_order;
  auto weight_of = [&](double freq_norm) {
    return 1.0 + std::pow(freq_norm, p2);
  };

  // Bias over the coefficient support. The ratio form keeps the huge-weight
  // limit finite (the coefficient is fully suppressed, leaving theta).
  double bias = 0.0;
  for (const auto& [q, theta] : spec.target_coeffs) {
    double norm2 = 0.0;
    for (int qi : q) norm2 += double(qi) * double(qi);
    const double c = weight_of(two_pi * std::sqrt(norm2));
    const double shrink = 1.0 / (1.0 + spec.lambda * c);
    const std::complex<double> b =
        shrink * alpha * (spec.surrogate_coeffs.at(q) - theta) +
        (1.0 - shrink) * theta;
    bias += std::norm(b);
  }

  // Variance over the whole truncated lattice, walked with an odometer.
  const double lattice_size =
      std::pow(2.0 * spec.truncation + 1.0, double(spec.dim));
  if (lattice_size > 5e7) {
    throw Error(Errc::invalid_argument,
                "truncated lattice too large to enumerate");
  }
  double var_count = 0.0;
  std::vector<int> q(spec.dim, -spec.truncation);
  for (;;) {
    double norm2 = 0.0;
    for (int qi : q) norm2 += double(qi) * double(qi);
    const double c = weight_of(two_pi * std::sqrt(norm2));
    const double shrink = 1.0 / (1.0 + spec.lambda * c);
    var_count += shrink * shrink;
    int pos = 0;
    while (pos < spec.dim && ++q[pos] > spec.truncation) {
      q[pos] = -spec.truncation;
      ++pos;
    }
    if (pos == spec.dim) break;
  }

  const double noise =
      (1.0 - alpha) * (1.0 - alpha) * spec.sigma * spec.sigma / double(spec.n) +
      alpha * alpha * spec.sigma_s * spec.sigma_s / double(spec.m);
  return bias + noise * var_count;
}

double lowdim_risk(const LowDimCurvature& curv, std::int64_t n, std::int64_t m,
                   double alpha) {
  curv.validate();
  MixtureConfig(alpha, 0.0);
  if (n < 1 || m < 1) throw Error(Errc::invalid_argument, "n, m must be >= 1");
  Eigen::LLT<Eigen::MatrixXd> llt(curv.hessian);
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::singular_hessian, "hessian is not positive definite");
  }
  const double shift =
      curv.shift_gradient.dot(llt.solve(curv.shift_gradient));
  const double tr_or = llt.solve(curv.cov_original).trace();
  const double tr_su = llt.solve(curv.cov_surrogate).trace();
  return alpha * alpha * shift +
         (1.0 - alpha) * (1.0 - alpha) / double(n) * tr_or +
         alpha * alpha / double(m) * tr_su;
}

AlphaRisk lowdim_optimal_alpha(const LowDimCurvature& curv, std::int64_t n,
                               std::int64_t m) {
  curv.validate();
  if (n < 1 || m < 1) throw Error(Errc::invalid_argument, "n, m must be >= 1");
  Eigen::LLT<Eigen::MatrixXd> llt(curv.hessian);
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::singular_hessian, "hessian is not positive definite");
  }
  const double r_or = llt.solve(curv.cov_original).trace() / double(n);
  const double r_su =
      curv.shift_gradient.dot(llt.solve(curv.shift_gradient)) +
      llt.solve(curv.cov_surrogate).trace() / double(m);
  AlphaRisk out;
  if (r_or + r_su <= 0.0) {
    // Both error sources vanish: any weight attains zero risk.
    out.alpha_star = 0.0;
    out.risk_star = 0.0;
    return out;
  }
  out.alpha_star = r_or / (r_su + r_or);
  out.risk_star = (r_su <= 0.0) ? 0.0 : r_or * r_su / (r_or + r_su);
  return out;
}

SaddlePoint hidim_fixed_point(const HiDimSpec& spec, double alpha, double tau,
                              double tau_s, double omega) {
  spec.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(Errc::invalid_argument,
                "fixed point requires alpha strictly inside (0,1)");
  }
  if (tau < 0.0 || tau_s < 0.0 || omega < 0.0) {
    throw Error(Errc::invalid_argument, "tau, tau_s, omega must be >= 0");
  }
  const Branch o{spec.delta, tau * tau + spec.sigma * spec.sigma, 1.0 - alpha};
  const Branch s{spec.delta_s, tau_s * tau_s + spec.sigma_s * spec.sigma_s,
                 alpha};
  return saddle_two_branch(o, s, omega);
}

double hidim_objective(const HiDimSpec& spec, double alpha, double xi,
                       double xi_perp, double omega) {
  spec.validate();
  MixtureConfig(alpha, spec.lambda);
  if (xi_perp < 0.0 || omega < 0.0) {
    throw Error(Errc::invalid_argument, "xi_perp and omega must be >= 0");
  }
  return objective_impl(spec, alpha, xi, xi_perp, omega);
}

HiDimSolution hidim_asymptotic_risk(const HiDimSpec& spec, double alpha) {
  spec.validate();
  MixtureConfig(alpha, spec.lambda);

  double a = alpha;
  const bool endpoints_exact = spec.delta > 1.0 && spec.delta_s > 1.0;
  if (!endpoints_exact) {
    a = std::clamp(a, kHiDimEndpointMargin, 1.0 - kHiDimEndpointMargin);
  }

  auto objective = [&](const Point3& x) {
    return objective_impl(spec, a, x[0], std::abs(x[1]), std::abs(x[2]));
  };

  const double cg = std::cos(spec.gamma), sg = std::sin(spec.gamma);
  const double scale = std::max({1.0, spec.r, spec.r_s});
  const std::array<Point3, 5> starts = {
      Point3{(1.0 - a) * spec.r + a * spec.r_s * cg, a * spec.r_s * sg + 0.05,
             0.2},
      Point3{spec.r, 0.1, 0.1},
      Point3{0.1, 0.1, 0.5},
      Point3{spec.r_s * cg, std::max(spec.r_s * sg, 0.1), 0.3},
      Point3{0.5 * (spec.r + spec.r_s), 0.2, 0.8},
  };

  NmResult best{starts[0], std::numeric_limits<double>::infinity()};
  for (const Point3& s0 : starts) {
    NmResult r = nelder_mead3(objective, s0, 0.25 * scale, 1e-9, 4000);
    r = nelder_mead3(objective, r.x, 0.02 * scale, 1e-9, 4000);
    if (r.f < best.f) best = r;
  }

  HiDimSolution sol;
  sol.xi = best.x[0];
  sol.xi_perp = std::abs(best.x[1]);
  sol.omega = std::abs(best.x[2]);
  const TauPair tp = taus_at(spec, sol.xi, sol.xi_perp, sol.omega);
  sol.tau = std::sqrt(tp.tau2);
  sol.tau_s = std::sqrt(tp.tau_s2);
  if (a <= 0.0 || a >= 1.0) {
    const bool surrogate_only = a >= 1.0;
    const double aspect = surrogate_only ? spec.delta_s : spec.delta;
    const double variance =
        surrogate_only ? tp.tau_s2 + spec.sigma_s * spec.sigma_s
                       : tp.tau2 + spec.sigma * spec.sigma;
    const double rho =
        std::max(0.0, (std::sqrt(aspect * variance) - sol.omega) / aspect);
    sol.rho_bar = rho;
    sol.rho = surrogate_only ? 0.0 : rho;
    sol.rho_s = surrogate_only ? rho : 0.0;
    sol.t = surrogate_only ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    const Branch o{spec.delta, tp.tau2 + spec.sigma * spec.sigma, 1.0 - a};
    const Branch s{spec.delta_s, tp.tau_s2 + spec.sigma_s * spec.sigma_s, a};
    const SaddlePoint sp = saddle_two_branch(o, s, sol.omega);
    sol.rho_bar = sp.rho_bar;
    sol.t = sp.t;
    sol.rho = sp.rho;
    sol.rho_s = sp.rho_s;
  }
  const double dxi = sol.xi - spec.r;
  sol.risk = dxi * dxi + sol.xi_perp * sol.xi_perp + sol.omega * sol.omega;
  return sol;
}

RiskCurve hidim_risk_curve(const HiDimSpec& spec,
                           const std::vector<double>& alpha_grid,
                           int threads) {
  if (alpha_grid.empty()) {
    throw Error(Errc::invalid_argument, "alpha grid must be non-empty");
  }
  std::vector<double> risks(alpha_grid.size());
  parallel_for(alpha_grid.size(), threads, [&](std::size_t i) {
    risks[i] = hidim_asymptotic_risk(spec, alpha_grid[i]).risk;
  });
  RiskCurve curve;
  curve.points.reserve(alpha_grid.size());
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    curve.points.push_back({alpha_grid[i], risks[i], 0.0});
  }
  curve.validate();
  return curve;
}

}  // namespace surromix::oracles
