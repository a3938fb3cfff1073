#ifndef SURROMIX_TYPES_HPP
#define SURROMIX_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "surromix/errors.hpp"

// Core domain types. All of them are plain values: validated on
// construction (and on JSON load), immutable by convention afterwards, and
// safe to share across threads.

namespace surromix {

enum class DataSource { Original, Surrogate };

// A design matrix plus responses. `responses` may be empty for tasks that
// only consume feature rows (e.g. mean estimation); otherwise its length
// must equal the row count. Classification responses are encoded as +-1.
struct LabeledDataset {
  Eigen::MatrixXd features;  // count x dim
  Eigen::VectorXd responses;
  DataSource source = DataSource::Original;

  LabeledDataset() = default;
  LabeledDataset(Eigen::MatrixXd f, Eigen::VectorXd r, DataSource s);
  LabeledDataset(Eigen::MatrixXd f, DataSource s);  // features-only

  Eigen::Index count() const { return features.rows(); }
  Eigen::Index dim() const { return features.cols(); }
  bool has_responses() const { return responses.size() > 0; }

  void validate() const;
};

// Surrogate weight and ridge penalty of the weighted objective.
struct MixtureConfig {
  double alpha = 0.0;  // in [0,1]
  double lambda = 0.0; // >= 0

  MixtureConfig() = default;
  MixtureConfig(double alpha, double lambda);
  void validate() const;
};

// A + B * n^(-beta) fit of a loss-vs-sample-size curve.
struct PowerLawFit {
  double asymptote = 0.0;    // A >= 0
  double coefficient = 0.0;  // B >= 0
  double exponent = 1.0;     // beta > 0
  double residual = 0.0;     // RMSE of the fit
  bool degenerate = false;   // all losses equal; A = mean, B = 0 returned

  double predict(double n) const;
  void validate() const;
};

// Fitted quantities feeding the mixture scaling law: Bayes risk, the
// infinite-surrogate excess gap, the two per-source power laws, and the
// shared bracket exponent (taken from the original-data fit).
struct ScalingLawModel {
  double bayes_risk = 0.0;
  double surrogate_gap = 0.0;  // >= 0
  PowerLawFit original_fit;
  PowerLawFit surrogate_fit;
  double beta = 1.0;        // > 0
  bool gap_clamped = false; // surrogate asymptote came in below bayes_risk

  void validate() const;
};

// Universal output shape for oracles, simulations and predictions: a
// sequence of (alpha, risk, std_error) points with strictly increasing
// alphas. Analytic curves carry std_error = 0.
struct RiskCurve {
  struct Point {
    double alpha = 0.0;
    double risk = 0.0;
    double std_error = 0.0;
  };
  std::vector<Point> points;

  void validate() const;
  std::size_t argmin() const;  // index of the smallest risk
};

// Direct-observation model: theta is observed in Gaussian noise and
// penalized by a diagonal quadratic with eigenvalues `omega`. `mu` and
// `rho_decay` are growth/decay exponents used only by the penalty
// selection rule, not by the risk formulas.
struct SequenceModelSpec {
  Eigen::VectorXd theta_star;
  Eigen::VectorXd theta_star_s;
  Eigen::VectorXd omega;  // non-decreasing, >= 0
  double sigma = 1.0;     // > 0
  double sigma_s = 1.0;   // > 0
  std::int64_t n = 1;
  std::int64_t m = 1;
  double mu = 1.0;        // > 1/2
  double rho_decay = 1.0; // > 0

  Eigen::Index dim() const { return theta_star.size(); }
  void validate() const;
};

// Truncated Fourier description of a nonparametric regression pair. Keys
// are integer lattice points q (the physical frequency is 2*pi*q); maps
// must share a key set closed under q -> -q with conjugate values, so the
// underlying functions are real.
struct NonparamSpec {
  using LatticePoint = std::vector<int>;
  using CoeffMap = std::map<LatticePoint, std::complex<double>>;

  int dim = 1;                // d >= 1
  double penalty_order = 1.0; // p > 0
  CoeffMap target_coeffs;
  CoeffMap surrogate_coeffs;
  int truncation = 32;        // sums run over max-norm ball of this radius
  double sigma = 1.0;
  double sigma_s = 1.0;
  std::int64_t n = 1;
  std::int64_t m = 1;
  double lambda = 0.0;

  void validate() const;
};

// Proportional-regime ridge problem: aspect ratios, signal geometry
// (lengths r, r_s and angle gamma), noise levels, penalty.
struct HiDimSpec {
  double delta = 2.0;    // n/d limit, > 0
  double delta_s = 2.0;  // m/d limit, > 0; delta + delta_s > 1 required
  double r = 1.0;        // >= 0
  double r_s = 1.0;      // >= 0
  double gamma = 0.0;    // angle in [0, pi]
  double sigma = 1.0;    // >= 0
  double sigma_s = 1.0;  // >= 0
  double lambda = 0.1;   // > 0

  void validate() const;
};

// Minimizer of the proportional-regime variational objective together with
// the saddle quantities realizing the inner maximum, and the resulting
// asymptotic excess risk (xi - r)^2 + xi_perp^2 + omega^2.
struct HiDimSolution {
  double xi = 0.0;
  double xi_perp = 0.0;  // >= 0
  double omega = 0.0;    // >= 0
  double rho_bar = 0.0;  // > 0
  double t = 0.0;        // >= 0
  double rho = 0.0;      // >= 0
  double rho_s = 0.0;    // >= 0; rho^2 + rho_s^2 = rho_bar^2
  double tau = 0.0;      // >= 0
  double tau_s = 0.0;    // >= 0
  double risk = 0.0;     // >= 0

  void validate() const;
};

// Local curvature summary for the large-sample, fixed-dimension expansion:
// population Hessian at the optimum, gradient covariances under the two
// distributions, and the shift of the surrogate population gradient.
struct LowDimCurvature {
  Eigen::MatrixXd hessian;        // symmetric positive definite
  Eigen::MatrixXd cov_original;   // symmetric PSD
  Eigen::MatrixXd cov_surrogate;  // symmetric PSD
  Eigen::VectorXd shift_gradient;

  Eigen::Index dim() const { return hessian.rows(); }
  void validate() const;
};

enum class GeneratorKind {
  GaussianMean,
  GaussianMixture,
  HiDimLinear,
  SequenceModel,
};

struct GaussianMeanParams {
  int d = 1;
  double sigma = 1.0;
  double sigma_s = 1.0;
  double gap = 0.0;  // squared distance between the two means
  // Optional explicit means; default is theta = 0, theta_s = sqrt(gap)*e1.
  std::optional<Eigen::VectorXd> theta;
  std::optional<Eigen::VectorXd> theta_s;
};

struct GaussianMixtureParams {
  int d = 2;
  double gamma = 0.0;  // angle between the two unit class means
  std::int64_t test_size = 100000;
};

struct HiDimLinearParams {
  int d = 1;
  double r = 1.0;
  double r_s = 1.0;
  double gamma = 0.0;
  double sigma = 1.0;
  double sigma_s = 1.0;
};

struct SequenceModelParams {
  Eigen::VectorXd theta_star;
  Eigen::VectorXd theta_star_s;
  Eigen::VectorXd omega;
  double sigma = 1.0;
  double sigma_s = 1.0;
  double mu = 1.0;
  double rho_decay = 1.0;
};

using GeneratorParams = std::variant<GaussianMeanParams, GaussianMixtureParams,
                                     HiDimLinearParams, SequenceModelParams>;

// Full description of a Monte Carlo experiment: the (n, m, alpha) grid, the
// penalty grid for validation selection, replicate count, seed and data
// generator. A plan plus a seed determines the output bytes exactly.
struct ExperimentPlan {
  std::vector<std::int64_t> n_grid;
  std::vector<std::int64_t> m_grid;
  std::vector<double> alpha_grid;
  std::vector<double> lambda_grid;
  int replicates = 1;
  std::uint64_t seed = 0;
  GeneratorKind generator = GeneratorKind::GaussianMean;
  GeneratorParams generator_params = GaussianMeanParams{};

  void validate() const;
};

const char* to_string(DataSource s);
const char* to_string(GeneratorKind g);
DataSource data_source_from_string(const std::string& s);
GeneratorKind generator_kind_from_string(const std::string& s);

}  // namespace surromix

#endif
