#ifndef SURROMIX_ORACLES_HPP
#define SURROMIX_ORACLES_HPP

#include <vector>

#include "surromix/types.hpp"

// Analytic and asymptotic risk predictors for the four tractable settings:
// Gaussian mean estimation, the direct-observation (sequence) model,
// Fourier-truncated nonparametric regression, the fixed-dimension
// large-sample expansion, and proportional-regime ridge regression.

namespace surromix::oracles {

// --- Gaussian mean estimation ---------------------------------------------

// Exact risk of the shrunk mean estimator:
//   alpha^2 * gap + (alpha^2/m + (1-alpha)^2/n) * d,
// where gap is the squared distance between the two population means.
// Zero-weight terms are dropped; a zero-count side with nonzero weight is a
// bad_weight error.
double mean_risk(std::int64_t d, std::int64_t n, std::int64_t m, double alpha,
                 double gap);

struct AlphaRisk {
  double alpha_star = 0.0;
  double risk_star = 0.0;
};

// Minimizer of mean_risk over alpha and its value:
//   alpha* = (d/n) / (gap + d/m + d/n),
//   risk*  = (gap + d/m) / (gap + d/m + d/n) * (d/n).
// risk* is strictly below d/n for every m >= 1: shrinkage towards the
// surrogate mean helps no matter how far away it is.
AlphaRisk mean_optimal_alpha(std::int64_t d, std::int64_t n, std::int64_t m,
                             double gap);

// Risk of unweighted ERM on the pooled sample:
//   (m/(n+m))^2 * gap + d/(n+m).
double naive_pooled_risk(std::int64_t d, std::int64_t n, std::int64_t m,
                         double gap);

// --- Sequence model --------------------------------------------------------

struct SequenceRisk {
  double risk = 0.0;            // bias + noise_scale * variance_count
  double bias = 0.0;            // sum_k (1+l*w_k)^-2 ((a+l*w_k) th_k - a th_k^s)^2
  double variance_count = 0.0;  // sum_k (1+l*w_k)^-2
  double noise_scale = 0.0;     // (1-a)^2 s^2/n + a^2 s_s^2/m
};

// Exact expected risk of sequence_estimate, decomposed.
SequenceRisk sequence_risk(const SequenceModelSpec& spec,
                           const MixtureConfig& config);

// Penalty selection rule: with beta = 2(mu^rho)/(1+2(mu^rho)) and
// s = noise_scale(alpha), keep k1 = clamp(round(s^(beta-1)), 1, dim)
// coordinates lightly penalized and return lambda = 1/omega_k1.
double sequence_lambda_star(const SequenceModelSpec& spec, double alpha);

// --- Nonparametric regression (white-noise Fourier domain) -----------------

// Truncated lattice sum
//   sum_q (1+l*c_q)^-2 |alpha (th_s - th)(q) + l*c_q th(q)|^2
//   + K_{n,m} * sum_q (1+l*c_q)^-2,
// with c_q = 1 + |2 pi q|^(2p) and K_{n,m} = (1-a)^2 s^2/n + a^2 s_s^2/m.
// The bias sum runs over the coefficient support, the variance sum over the
// whole max-norm ball |q|_inf <= truncation; the neglected tail is
// O(truncation^(d - 4p)), so penalty_order p > d/4 is required
// (penalty_too_weak otherwise).
double nonparam_risk(const NonparamSpec& spec, double alpha);

// --- Fixed-dimension large-sample expansion ---------------------------------

// Leading-order excess risk
//   alpha^2 <g, H^-1 g> + (1-alpha)^2/n tr(H^-1 K) + alpha^2/m tr(H^-1 K_s).
// Valid for large n, m and small alpha^2 |g|; higher-order terms dropped.
double lowdim_risk(const LowDimCurvature& curv, std::int64_t n, std::int64_t m,
                   double alpha);

// Closed-form optimum of the expansion: with Ror = tr(H^-1 K)/n and
// Rsu = <g, H^-1 g> + tr(H^-1 K_s)/m,
//   alpha* = Ror / (Rsu + Ror),  risk* = (Ror^-1 + Rsu^-1)^-1.
AlphaRisk lowdim_optimal_alpha(const LowDimCurvature& curv, std::int64_t n,
                               std::int64_t m);

// --- Proportional-regime ridge ---------------------------------------------

struct SaddlePoint {
  double rho_bar = 0.0;
  double t = 0.0;
  double rho = 0.0;
  double rho_s = 0.0;
};

// Solves the scalar fixed point
//   rb^2 = delta (tau^2+sigma^2) / (delta/(1-a) + omega/rb)^2
//        + delta_s (tau_s^2+sigma_s^2) / (delta_s/a + omega/rb)^2
// by damped iteration (eta = 0.5) with a bisection fallback, to absolute
// residual <= 1e-10, then
//   t   = (omega + delta rb/(1-a)) / (omega + delta_s rb/a)
//         * sqrt(delta_s (tau_s^2+sigma_s^2) / (delta (tau^2+sigma^2))),
//   rho = rb/sqrt(1+t^2), rho_s = rb t/sqrt(1+t^2).
// Requires alpha in (0,1) and not both branch variances zero.
SaddlePoint hidim_fixed_point(const HiDimSpec& spec, double alpha, double tau,
                              double tau_s, double omega);

// Asymptotic excess risk of weighted ridge in the proportional regime:
// minimizes the variational objective over (xi, xi_perp >= 0, omega >= 0)
// by Nelder-Mead (reflected into the feasible orthant, simplex tolerance
// 1e-9, deterministic restarts) with the saddle point above realizing the
// inner maximum at every candidate, and reports
//   risk = (xi*-r)^2 + xi_perp*^2 + omega*^2.
// alpha in {0,1} is mapped to the endpoint margin 1e-3 unless both aspect
// ratios exceed 1, in which case the true endpoint (a single-branch
// objective) is evaluated.
HiDimSolution hidim_asymptotic_risk(const HiDimSpec& spec, double alpha);

// Risk curve over an alpha grid (std_error = 0). Grid entries must be
// strictly increasing and lie in [0,1]; endpoints follow the rule above.
// Grid points are evaluated in parallel (threads = 0 means all cores) into
// indexed slots, so the curve does not depend on the thread count.
RiskCurve hidim_risk_curve(const HiDimSpec& spec,
                           const std::vector<double>& alpha_grid,
                           int threads = 0);

// Variational objective value at a feasible point (inner maximum solved
// internally). Exposed for diagnostics and tests.
double hidim_objective(const HiDimSpec& spec, double alpha, double xi,
                       double xi_perp, double omega);

// Endpoint margin used when an endpoint alpha cannot be evaluated directly.
inline constexpr double kHiDimEndpointMargin = 1e-3;

}  // namespace surromix::oracles

#endif
