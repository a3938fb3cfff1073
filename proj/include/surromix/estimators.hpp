#ifndef SURROMIX_ESTIMATORS_HPP
#define SURROMIX_ESTIMATORS_HPP

#include "surromix/types.hpp"

// Weighted empirical risk minimizers. Each solver minimizes
//
//   (1-alpha)/n * sum_i loss(theta; z_i) + alpha/m * sum_i loss(theta; z_i^s)
//                                        + lambda * |theta|^2
//
// for its model family. A term whose weight is exactly zero is dropped, so
// alpha = 0 reproduces the original-only fit bit for bit (and alpha = 1 the
// surrogate-only fit). A side with zero samples is only legal when its
// weight is zero; anything else is a bad_weight error.

namespace surromix::estimators {

// Shrinks the original sample mean towards the surrogate sample mean:
// (1-alpha) * colmean(original) + alpha * colmean(surrogate).
Eigen::VectorXd weighted_mean(const LabeledDataset& original,
                              const LabeledDataset& surrogate, double alpha);

// Closed-form solution of the weighted ridge normal equations
//   (lambda*I + (1-alpha)/n X'X + alpha/m Xs'Xs) theta
//      = (1-alpha)/n X'y + alpha/m Xs'ys.
// With lambda = 0 the weighted Gram matrix must be nonsingular
// (singular_system otherwise).
Eigen::VectorXd weighted_ridge(const LabeledDataset& original,
                               const LabeledDataset& surrogate,
                               const MixtureConfig& config);

// Weighted logistic regression with loss log(1 + exp(-y <x, theta>)),
// responses in {-1, +1}, lambda > 0. Full-batch gradient descent with
// Armijo backtracking (initial step 1.0, halving factor 0.5,
// sufficient-decrease 1e-4); converged when the objective gradient norm is
// <= tol. Deterministic given its inputs. Throws NotConvergedError carrying
// the last iterate and gradient norm after max_iter iterations.
Eigen::VectorXd weighted_logistic(const LabeledDataset& original,
                                  const LabeledDataset& surrogate,
                                  const MixtureConfig& config,
                                  double tol = 1e-8, long max_iter = 100000);

// Coordinate-wise solution for the direct-observation model:
// theta_k = ((1-alpha)*ybar_k + alpha*ybar_s_k) / (1 + lambda*omega_k).
Eigen::VectorXd sequence_estimate(const SequenceModelSpec& spec,
                                  const Eigen::VectorXd& obs_mean,
                                  const Eigen::VectorXd& obs_mean_s,
                                  const MixtureConfig& config);

// Value and gradient of the weighted objective above, exposed so callers
// can verify stationarity of a returned iterate.
double logistic_objective(const LabeledDataset& original,
                          const LabeledDataset& surrogate,
                          const MixtureConfig& config,
                          const Eigen::VectorXd& theta);
Eigen::VectorXd logistic_gradient(const LabeledDataset& original,
                                  const LabeledDataset& surrogate,
                                  const MixtureConfig& config,
                                  const Eigen::VectorXd& theta);
double ridge_objective(const LabeledDataset& original,
                       const LabeledDataset& surrogate,
                       const MixtureConfig& config,
                       const Eigen::VectorXd& theta);

}  // namespace surromix::estimators

#endif
