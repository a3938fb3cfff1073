#ifndef SURROMIX_SCALING_HPP
#define SURROMIX_SCALING_HPP

#include <optional>
#include <vector>

#include "surromix/oracles.hpp"  // AlphaRisk
#include "surromix/types.hpp"

// Mixture scaling law: fit per-source power laws A + B * n^(-beta), combine
// them into a ScalingLawModel, predict mixed-training risk
//
//   R(n, m, alpha) ~ R* + alpha^2 G
//     + [ alpha^2 Esu(m)^(1/beta) + (1-alpha)^2 Eor(n)^(1/beta) ]^beta
//
// with G the infinite-surrogate excess gap, Eor(n) = Bor n^(-beta_or),
// Esu(m) = Bsu m^(-beta_su), and beta the exponent of the original-data
// fit; then use the prediction to pick alpha and plan surrogate acquisition.

namespace surromix::scaling {

struct LossPoint {
  std::int64_t n = 1;
  double loss = 0.0;
};

// Least-squares fit of A + B * n^(-beta) with A, B >= 0 and beta in
// [0.01, 4]: a geometric 200-point grid over beta, closed-form non-negative
// (A, B) at each grid point, then golden-section refinement of beta.
// Deterministic. Needs >= 4 distinct n values (too_few_points). If all
// losses agree to 1e-12 the fit is flagged degenerate with A = mean, B = 0,
// beta = 1.
PowerLawFit fit_power_law(const std::vector<LossPoint>& points);

// Combine per-source fits: bayes_risk = A_or, surrogate_gap =
// max(A_su - A_or, 0) (clamped and flagged when negative), beta = beta_or.
ScalingLawModel build_model(const std::vector<LossPoint>& original_points,
                            const std::vector<LossPoint>& surrogate_points);

// Scaling-law prediction above. alpha = 0 and alpha = 1 are evaluated by
// their endpoint formulas exactly. Requires n >= 1 unless alpha = 1 and
// m >= 1 unless alpha = 0 (bad_weight).
double predict_mixture_risk(const ScalingLawModel& model, std::int64_t n,
                            std::int64_t m, double alpha);

// Minimizes predict_mixture_risk over alpha in [0,1]: a 101-point grid scan
// seeds a golden-section refinement, which guards the rare non-unimodal
// shapes.
oracles::AlphaRisk optimal_alpha(const ScalingLawModel& model, std::int64_t n,
                                 std::int64_t m);

// Smallest m (up to 1e12) whose optimally weighted predicted risk is
// <= target_risk, found by doubling plus bisection; std::nullopt when even
// m = 1e12 stays above target.
std::optional<std::int64_t> required_surrogate(const ScalingLawModel& model,
                                               std::int64_t n,
                                               double target_risk);

}  // namespace surromix::scaling

#endif
