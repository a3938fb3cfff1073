#ifndef SURROMIX_SIM_HPP
#define SURROMIX_SIM_HPP

#include <utility>
#include <vector>

#include "surromix/rng.hpp"
#include "surromix/types.hpp"

// Data generators and the Monte Carlo harness. Every generator draws in a
// fixed row-major order from a caller-supplied stream, so a (seed, stream)
// pair determines the dataset bytes exactly. run_experiment derives one
// stream per (cell, replicate, purpose) and aggregates replicate risks into
// indexed slots, which makes its output identical at any thread count.

namespace surromix::sim {

enum class Task {
  MeanEstimation,
  GaussianMixtureClassification,
  LinearRegression,
  SequenceModel,
};

// n rows of theta + sigma * g with g standard normal.
LabeledDataset gen_gaussian_mean(int d, std::int64_t n,
                                 const Eigen::VectorXd& theta, double sigma,
                                 CounterRng& rng, DataSource source);

// Labels uniform on {-1,+1}; x | y ~ N(y * theta, I). theta must be a unit
// vector (not_unit_norm otherwise).
LabeledDataset gen_gaussian_mixture(int d, std::int64_t n,
                                    const Eigen::VectorXd& theta,
                                    CounterRng& rng, DataSource source);

// X standard normal, y = X theta + sigma * eps.
LabeledDataset gen_hidim_linear(int d, std::int64_t n,
                                const Eigen::VectorXd& theta, double sigma,
                                CounterRng& rng, DataSource source);

// Sufficient statistics of the direct-observation model: the two
// observation means theta + sigma*g/sqrt(n) and theta_s + sigma_s*g_s/sqrt(m).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gen_sequence_obs(
    const SequenceModelSpec& spec, CounterRng& rng);

// Ground-truth description used by risk evaluation.
struct Truth {
  Task task = Task::MeanEstimation;
  Eigen::VectorXd theta_star;
};

struct RiskEstimate {
  double risk = 0.0;
  double std_error = 0.0;
};

// Excess risk of a fitted parameter. Mean/linear/sequence tasks use the
// exact |theta_hat - theta_star|^2 (std_error = 0); classification draws
// test_size fresh samples and reports the 0-1 error with its binomial
// standard error. Ties <x, theta> = 0 predict +1.
RiskEstimate estimate_risk(const Truth& truth, const Eigen::VectorXd& theta_hat,
                           std::int64_t test_size, CounterRng& rng);

struct Selection {
  double alpha = 0.0;
  double lambda = 0.0;
  Eigen::VectorXd theta_hat;
};

// Trains one model per (alpha, lambda) grid point and returns the pair with
// the smallest validation loss (squared error for regression/mean tasks,
// 0-1 error for classification). Ties break toward smaller alpha, then
// larger lambda.
Selection select_by_validation(Task task, const LabeledDataset& original,
                               const LabeledDataset& surrogate,
                               const std::vector<double>& alphas,
                               const std::vector<double>& lambdas,
                               const LabeledDataset& validation);

struct ResultRow {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double alpha = 0.0;
  double risk_mean = 0.0;
  double risk_se = 0.0;
  int replicates = 0;
};

// Runs the full plan: every (n, m, alpha) cell, `replicates` independent
// train+evaluate cycles each, validation-selected lambda when the plan's
// lambda grid has more than one entry. Rows come back sorted
// lexicographically by (n, m, alpha). A cell with n = 0 trains at alpha = 1
// (surrogate only), and one with m = 0 at alpha = 0. threads = 0 means all
// cores; the output does not depend on the thread count.
std::vector<ResultRow> run_experiment(const ExperimentPlan& plan,
                                      int threads = 0);

// Validation set size convention for simulated tasks.
std::int64_t validation_size(std::int64_t n);

}  // namespace surromix::sim

#endif
