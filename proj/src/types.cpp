#include "surromix/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace surromix {

namespace {

[[noreturn]] void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

void require(bool ok, Errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

void require_symmetric(const Eigen::MatrixXd& m, const char* name) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale,
          Errc::invalid_argument, std::string(name) + " is not symmetric");
}

void require_psd(const Eigen::MatrixXd& m, const char* name) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  require(es.eigenvalues().minCoeff() >= -1e-10 * scale,
          Errc::invalid_argument,
          std::string(name) + " is not positive semi-definite");
}

}  // namespace

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::dim_mismatch: return "dim_mismatch";
    case Errc::empty_dataset: return "empty_dataset";
    case Errc::bad_weight: return "bad_weight";
    case Errc::bad_labels: return "bad_labels";
    case Errc::not_unit_norm: return "not_unit_norm";
    case Errc::singular_system: return "singular_system";
    case Errc::singular_hessian: return "singular_hessian";
    case Errc::zero_eigenvalue: return "zero_eigenvalue";
    case Errc::penalty_too_weak: return "penalty_too_weak";
    case Errc::invalid_regime: return "invalid_regime";
    case Errc::task_mismatch: return "task_mismatch";
    case Errc::too_few_points: return "too_few_points";
    case Errc::not_converged: return "not_converged";
    case Errc::io_error: return "io_error";
    case Errc::parse_error: return "parse_error";
  }
  return "unknown";
}

LabeledDataset::LabeledDataset(Eigen::MatrixXd f, Eigen::VectorXd r,
                               DataSource s)
    : features(std::move(f)), responses(std::move(r)), source(s) {
  validate();
}

LabeledDataset::LabeledDataset(Eigen::MatrixXd f, DataSource s)
    : features(std::move(f)), source(s) {
  validate();
}

void LabeledDataset::validate() const {
  require(all_finite(features) && all_finite(responses), Errc::invalid_argument,
          "dataset contains non-finite values");
  if (responses.size() > 0) {
    require(responses.size() == features.rows(), Errc::dim_mismatch,
            "responses length does not match feature row count");
  }
}

MixtureConfig::MixtureConfig(double alpha, double lambda)
    : alpha(alpha), lambda(lambda) {
  validate();
}

void MixtureConfig::validate() const {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0,
          Errc::invalid_argument, "alpha must lie in [0,1]");
  require(std::isfinite(lambda) && lambda >= 0.0, Errc::invalid_argument,
          "lambda must be >= 0");
}

double PowerLawFit::predict(double n) const {
  return asymptote + coefficient * std::pow(n, -exponent);
}

void PowerLawFit::validate() const {
  require(std::isfinite(asymptote) && asymptote >= 0.0, Errc::invalid_argument,
          "asymptote must be >= 0");
  require(std::isfinite(coefficient) && coefficient >= 0.0,
          Errc::invalid_argument, "coefficient must be >= 0");
  require(std::isfinite(exponent) && exponent > 0.0, Errc::invalid_argument,
          "exponent must be > 0");
  require(std::isfinite(residual) && residual >= 0.0, Errc::invalid_argument,
          "residual must be >= 0");
}

void ScalingLawModel::validate() const {
  original_fit.validate();
  surrogate_fit.validate();
  require(std::isfinite(bayes_risk), Errc::invalid_argument,
          "bayes_risk must be finite");
  require(std::isfinite(surrogate_gap) && surrogate_gap >= 0.0,
          Errc::invalid_argument, "surrogate_gap must be >= 0");
  require(std::isfinite(beta) && beta > 0.0, Errc::invalid_argument,
          "beta must be > 0");
}

void RiskCurve::validate() const {
  double prev = -std::numeric_limits<double>::infinity();
  for (const Point& p : points) {
    require(std::isfinite(p.alpha) && p.alpha >= 0.0 && p.alpha <= 1.0,
            Errc::invalid_argument, "curve alpha must lie in [0,1]");
    require(p.alpha > prev, Errc::invalid_argument,
            "curve alphas must be strictly increasing");
    require(std::isfinite(p.risk), Errc::invalid_argument,
            "curve risk must be finite");
    require(std::isfinite(p.std_error) && p.std_error >= 0.0,
            Errc::invalid_argument, "curve std_error must be >= 0");
    prev = p.alpha;
  }
}

std::size_t RiskCurve::argmin() const {
  require(!points.empty(), Errc::invalid_argument, "empty risk curve");
  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].risk < points[best].risk) best = i;
  }
  return best;
}

void SequenceModelSpec::validate() const {
  require(theta_star.size() == theta_star_s.size() &&
              theta_star.size() == omega.size(),
          Errc::dim_mismatch,
          "theta_star, theta_star_s and omega must have equal length");
  require(theta_star.size() > 0, Errc::empty_dataset,
          "sequence spec must be non-empty");
  require(all_finite(theta_star) && all_finite(theta_star_s) &&
              all_finite(omega),
          Errc::invalid_argument, "sequence spec has non-finite entries");
  for (Eigen::Index k = 0; k < omega.size(); ++k) {
    require(omega[k] >= 0.0, Errc::invalid_argument,
            "omega entries must be >= 0");
    if (k > 0) {
      require(omega[k] >= omega[k - 1], Errc::invalid_argument,
              "omega must be non-decreasing");
    }
  }
  require(sigma > 0.0 && std::isfinite(sigma), Errc::invalid_argument,
          "sigma must be > 0");
  require(sigma_s > 0.0 && std::isfinite(sigma_s), Errc::invalid_argument,
          "sigma_s must be > 0");
  require(n >= 1, Errc::invalid_argument, "n must be >= 1");
  require(m >= 1, Errc::invalid_argument, "m must be >= 1");
  require(mu > 0.5, Errc::invalid_argument, "mu must be > 1/2");
  require(rho_decay > 0.0, Errc::invalid_argument, "rho_decay must be > 0");
}

void NonparamSpec::validate() const {
  require(dim >= 1, Errc::invalid_argument, "dim must be >= 1");
  require(penalty_order > 0.0, Errc::invalid_argument,
          "penalty_order must be > 0");
  require(truncation >= 1, Errc::invalid_argument, "truncation must be >= 1");
  require(sigma > 0.0 && sigma_s > 0.0, Errc::invalid_argument,
          "noise levels must be > 0");
  require(n >= 1 && m >= 1, Errc::invalid_argument, "n and m must be >= 1");
  require(std::isfinite(lambda) && lambda >= 0.0, Errc::invalid_argument,
          "lambda must be >= 0");
  require(target_coeffs.size() == surrogate_coeffs.size(),
          Errc::invalid_argument, "coefficient maps must share one key set");
  for (const auto& [q, v] : target_coeffs) {
    require(static_cast<int>(q.size()) == dim, Errc::dim_mismatch,
            "lattice point dimension does not match dim");
    require(surrogate_coeffs.count(q) == 1, Errc::invalid_argument,
            "coefficient maps must share one key set");
    LatticePoint neg(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) neg[i] = -q[i];
    auto it = target_coeffs.find(neg);
    require(it != target_coeffs.end(), Errc::invalid_argument,
            "coefficient support must be closed under negation");
    require(std::abs(it->second - std::conj(v)) <=
                1e-12 * std::max(1.0, std::abs(v)),
            Errc::invalid_argument,
            "coefficients at q and -q must be conjugate (real function)");
    auto st = surrogate_coeffs.find(neg);
    const auto& sv = surrogate_coeffs.at(q);
    require(st != surrogate_coeffs.end() &&
                std::abs(st->second - std::conj(sv)) <=
                    1e-12 * std::max(1.0, std::abs(sv)),
            Errc::invalid_argument,
            "coefficients at q and -q must be conjugate (real function)");
  }
}

void HiDimSpec::validate() const {
  require(delta > 0.0 && delta_s > 0.0, Errc::invalid_argument,
          "delta and delta_s must be > 0");
  require(delta + delta_s > 1.0, Errc::invalid_regime,
          "delta + delta_s must exceed 1");
  require(r >= 0.0 && r_s >= 0.0, Errc::invalid_argument,
          "r and r_s must be >= 0");
  require(gamma >= 0.0 && gamma <= std::acos(-1.0) + 1e-12,
          Errc::invalid_argument, "gamma must lie in [0, pi]");
  require(sigma >= 0.0 && sigma_s >= 0.0, Errc::invalid_argument,
          "sigma and sigma_s must be >= 0");
  require(lambda > 0.0, Errc::invalid_argument, "lambda must be > 0");
}

void HiDimSolution::validate() const {
  require(xi_perp >= 0.0 && omega >= 0.0 && rho_bar > 0.0 && rho >= 0.0 &&
              rho_s >= 0.0 && tau >= 0.0 && tau_s >= 0.0 && risk >= 0.0,
          Errc::invalid_argument, "solution components out of range");
  const double lhs = rho * rho + rho_s * rho_s;
  require(std::abs(lhs - rho_bar * rho_bar) <=
              1e-8 * std::max(1.0, rho_bar * rho_bar),
          Errc::invalid_argument, "rho^2 + rho_s^2 must equal rho_bar^2");
}

void LowDimCurvature::validate() const {
  const Eigen::Index d = hessian.rows();
  require(d > 0, Errc::empty_dataset, "curvature matrices must be non-empty");
  require(hessian.cols() == d && cov_original.rows() == d &&
              cov_original.cols() == d && cov_surrogate.rows() == d &&
              cov_surrogate.cols() == d && shift_gradient.size() == d,
          Errc::dim_mismatch, "curvature matrices must be square, equal size");
  require(all_finite(hessian) && all_finite(cov_original) &&
              all_finite(cov_surrogate) && all_finite(shift_gradient),
          Errc::invalid_argument, "curvature contains non-finite values");
  require_symmetric(hessian, "hessian");
  require_symmetric(cov_original, "cov_original");
  require_symmetric(cov_surrogate, "cov_surrogate");
  Eigen::LLT<Eigen::MatrixXd> llt(hessian);
  require(llt.info() == Eigen::Success, Errc::singular_hessian,
          "hessian must be strictly positive definite");
  require_psd(cov_original, "cov_original");
  require_psd(cov_surrogate, "cov_surrogate");
}

void ExperimentPlan::validate() const {
  require(!n_grid.empty(), Errc::invalid_argument, "n_grid must be non-empty");
  require(!m_grid.empty(), Errc::invalid_argument, "m_grid must be non-empty");
  require(!alpha_grid.empty(), Errc::invalid_argument,
          "alpha_grid must be non-empty");
  require(!lambda_grid.empty(), Errc::invalid_argument,
          "lambda_grid must be non-empty");
  for (auto n : n_grid) {
    require(n >= 0, Errc::invalid_argument, "n_grid entries must be >= 0");
  }
  for (auto m : m_grid) {
    require(m >= 0, Errc::invalid_argument, "m_grid entries must be >= 0");
  }
  for (double a : alpha_grid) {
    if (!(std::isfinite(a) && a >= 0.0 && a <= 1.0)) {
      std::ostringstream os;
      os << "alpha_grid entry " << a << " must lie in [0,1]";
      fail(Errc::invalid_argument, os.str());
    }
  }
  for (double l : lambda_grid) {
    require(std::isfinite(l) && l >= 0.0, Errc::invalid_argument,
            "lambda_grid entries must be >= 0");
  }
  bool has_zero_n = false, has_zero_m = false;
  for (auto n : n_grid) has_zero_n |= (n == 0);
  for (auto m : m_grid) has_zero_m |= (m == 0);
  require(!(has_zero_n && has_zero_m), Errc::invalid_argument,
          "n_grid and m_grid must not both contain 0 (empty cell)");
  require(replicates >= 1, Errc::invalid_argument, "replicates must be >= 1");

  switch (generator) {
    case GeneratorKind::GaussianMean: {
      const auto& p = std::get<GaussianMeanParams>(generator_params);
      require(p.d >= 1, Errc::invalid_argument, "generator d must be >= 1");
      require(p.sigma >= 0.0 && p.sigma_s >= 0.0, Errc::invalid_argument,
              "generator sigma must be >= 0");
      require(p.gap >= 0.0, Errc::invalid_argument, "generator gap must be >= 0");
      if (p.theta) {
        require(p.theta->size() == p.d, Errc::dim_mismatch,
                "generator theta length must equal d");
      }
      if (p.theta_s) {
        require(p.theta_s->size() == p.d, Errc::dim_mismatch,
                "generator theta_s length must equal d");
      }
      break;
    }
    case GeneratorKind::GaussianMixture: {
      const auto& p = std::get<GaussianMixtureParams>(generator_params);
      require(p.d >= 2, Errc::invalid_argument, "generator d must be >= 2");
      require(p.gamma >= 0.0 && p.gamma <= std::acos(-1.0) + 1e-12,
              Errc::invalid_argument, "generator gamma must lie in [0, pi]");
      require(p.test_size >= 1, Errc::invalid_argument,
              "generator test_size must be >= 1");
      break;
    }
    case GeneratorKind::HiDimLinear: {
      const auto& p = std::get<HiDimLinearParams>(generator_params);
      require(p.d >= 2 || p.gamma == 0.0, Errc::invalid_argument,
              "generator d must be >= 2 for a nonzero angle");
      require(p.d >= 1, Errc::invalid_argument, "generator d must be >= 1");
      require(p.r >= 0.0 && p.r_s >= 0.0, Errc::invalid_argument,
              "generator r and r_s must be >= 0");
      require(p.sigma >= 0.0 && p.sigma_s >= 0.0, Errc::invalid_argument,
              "generator sigma must be >= 0");
      break;
    }
    case GeneratorKind::SequenceModel: {
      const auto& p = std::get<SequenceModelParams>(generator_params);
      SequenceModelSpec spec;
      spec.theta_star = p.theta_star;
      spec.theta_star_s = p.theta_star_s;
      spec.omega = p.omega;
      spec.sigma = p.sigma;
      spec.sigma_s = p.sigma_s;
      spec.mu = p.mu;
      spec.rho_decay = p.rho_decay;
      spec.n = 1;
      spec.m = 1;
      spec.validate();
      break;
    }
  }
}

const char* to_string(DataSource s) {
  return s == DataSource::Original ? "original" : "surrogate";
}

const char* to_string(GeneratorKind g) {
  switch (g) {
    case GeneratorKind::GaussianMean: return "gaussian_mean";
    case GeneratorKind::GaussianMixture: return "gaussian_mixture";
    case GeneratorKind::HiDimLinear: return "hidim_linear";
    case GeneratorKind::SequenceModel: return "sequence_model";
  }
  return "unknown";
}

DataSource data_source_from_string(const std::string& s) {
  if (s == "original") return DataSource::Original;
  if (s == "surrogate") return DataSource::Surrogate;
  throw Error(Errc::parse_error, "unknown data source: " + s);
}

GeneratorKind generator_kind_from_string(const std::string& s) {
  if (s == "gaussian_mean") return GeneratorKind::GaussianMean;
  if (s == "gaussian_mixture") return GeneratorKind::GaussianMixture;
  if (s == "hidim_linear") return GeneratorKind::HiDimLinear;
  if (s == "sequence_model") return GeneratorKind::SequenceModel;
  throw Error(Errc::parse_error, "unknown generator: " + s);
}

}  // namespace surromix
