#include "surromix/estimators.hpp"

#include <cmath>

namespace surromix::estimators {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// 1 / (1 + exp(-z)).
double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_pair(const LabeledDataset& original, const LabeledDataset& surrogate,
                double alpha) {
  if (original.count() > 0 && surrogate.count() > 0 &&
      original.dim() != surrogate.dim()) {
    throw Error(Errc::dim_mismatch,
                "original and surrogate datasets differ in dimension");
  }
  if (original.count() == 0 && alpha < 1.0) {
    throw Error(Errc::bad_weight,
                "original dataset is empty but its weight 1-alpha is nonzero");
  }
  if (surrogate.count() == 0 && alpha > 0.0) {
    throw Error(Errc::bad_weight,
                "surrogate dataset is empty but its weight alpha is nonzero");
  }
  if (original.count() == 0 && surrogate.count() == 0) {
    throw Error(Errc::empty_dataset, "both datasets are empty");
  }
}

void check_labels(const LabeledDataset& d) {
  for (Eigen::Index i = 0; i < d.responses.size(); ++i) {
    if (d.responses[i] != 1.0 && d.responses[i] != -1.0) {
      throw Error(Errc::bad_labels, "classification responses must be +-1");
    }
  }
}

}  // namespace

Eigen::VectorXd weighted_mean(const LabeledDataset& original,
                              const LabeledDataset& surrogate, double alpha) {
  MixtureConfig(alpha, 0.0);  // range check
  check_pair(original, surrogate, alpha);
  const Eigen::Index d =
      original.count() > 0 ? original.dim() : surrogate.dim();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  if (alpha < 1.0) {
    if (original.count() == 0) {
      throw Error(Errc::empty_dataset, "original dataset is empty");
    }
    out += (1.0 - alpha) *
           (original.features.colwise().sum() / double(original.count()))
               .transpose();
  }
  if (alpha > 0.0) {
    if (surrogate.count() == 0) {
      throw Error(Errc::empty_dataset, "surrogate dataset is empty");
    }
    out += alpha *
           (surrogate.features.colwise().sum() / double(surrogate.count()))
               .transpose();
  }
  return out;
}

Eigen::VectorXd weighted_ridge(const LabeledDataset& original,
                               const LabeledDataset& surrogate,
                               const MixtureConfig& config) {
  config.validate();
  const double alpha = config.alpha;
  check_pair(original, surrogate, alpha);
  if (alpha < 1.0 && !original.has_responses()) {
    throw Error(Errc::invalid_argument, "original dataset has no responses");
  }
  if (alpha > 0.0 && !surrogate.has_responses()) {
    throw Error(Errc::invalid_argument, "surrogate dataset has no responses");
  }
  const Eigen::Index d =
      original.count() > 0 ? original.dim() : surrogate.dim();

  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d);
  if (alpha < 1.0 && original.count() > 0) {
    const double w = (1.0 - alpha) / double(original.count());
    gram.noalias() += w * (original.features.transpose() * original.features);
    rhs.noalias() += w * (original.features.transpose() * original.responses);
  }
  if (alpha > 0.0 && surrogate.count() > 0) {
    const double w = alpha / double(surrogate.count());
    gram.noalias() += w * (surrogate.features.transpose() * surrogate.features);
    rhs.noalias() += w * (surrogate.features.transpose() * surrogate.responses);
  }
  gram.diagonal().array() += config.lambda;

  if (config.lambda > 0.0) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success) {
      throw Error(Errc::singular_system, "weighted ridge system is singular");
    }
    return ldlt.solve(rhs);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (!lu.isInvertible()) {
    throw Error(Errc::singular_system,
                "lambda = 0 and the weighted Gram matrix is rank-deficient");
  }
  return lu.solve(rhs);
}

double ridge_objective(const LabeledDataset& original,
                       const LabeledDataset& surrogate,
                       const MixtureConfig& config,
                       const Eigen::VectorXd& theta) {
  double val = config.lambda * theta.squaredNorm();
  if (config.alpha < 1.0 && original.count() > 0) {
    val += (1.0 - config.alpha) / double(original.count()) *
           (original.responses - original.features * theta).squaredNorm();
  }
  if (config.alpha > 0.0 && surrogate.count() > 0) {
    val += config.alpha / double(surrogate.count()) *
           (surrogate.responses - surrogate.features * theta).squaredNorm();
  }
  return val;
}

double logistic_objective(const LabeledDataset& original,
                          const LabeledDataset& surrogate,
                          const MixtureConfig& config,
                          const Eigen::VectorXd& theta) {
  double val = config.lambda * theta.squaredNorm();
  auto term = [&theta](const LabeledDataset& d) {
    const Eigen::VectorXd margins =
        d.responses.array() * (d.features * theta).array();
    double s = 0.0;
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      s += softplus(-margins[i]);
    }
    return s / double(d.count());
  };
  if (config.alpha < 1.0 && original.count() > 0) {
    val += (1.0 - config.alpha) * term(original);
  }
  if (config.alpha > 0.0 && surrogate.count() > 0) {
    val += config.alpha * term(surrogate);
  }
  return val;
}

Eigen::VectorXd logistic_gradient(const LabeledDataset& original,
                                  const LabeledDataset& surrogate,
                                  const MixtureConfig& config,
                                  const Eigen::VectorXd& theta) {
  Eigen::VectorXd grad = 2.0 * config.lambda * theta;
  auto add_term = [&theta, &grad](const LabeledDataset& d, double weight) {
    Eigen::VectorXd coeff(d.count());
    const Eigen::VectorXd scores = d.features * theta;
    for (Eigen::Index i = 0; i < d.count(); ++i) {
      coeff[i] = -d.responses[i] * sigmoid(-d.responses[i] * scores[i]);
    }
    grad.noalias() +=
        (weight / double(d.count())) * (d.features.transpose() * coeff);
  };
  if (config.alpha < 1.0 && original.count() > 0) {
    add_term(original, 1.0 - config.alpha);
  }
  if (config.alpha > 0.0 && surrogate.count() > 0) {
    add_term(surrogate, config.alpha);
  }
  return grad;
}

Eigen::VectorXd weighted_logistic(const LabeledDataset& original,
                                  const LabeledDataset& surrogate,
                                  const MixtureConfig& config, double tol,
                                  long max_iter) {
  config.validate();
  check_pair(original, surrogate, config.alpha);
  if (config.lambda <= 0.0) {
    throw Error(Errc::invalid_argument,
                "logistic solver requires lambda > 0 for strict convexity");
  }
  if (config.alpha < 1.0) check_labels(original);
  if (config.alpha > 0.0) check_labels(surrogate);

  const Eigen::Index d =
      original.count() > 0 ? original.dim() : surrogate.dim();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d);
  double f = logistic_objective(original, surrogate, config, theta);
  Eigen::VectorXd grad = logistic_gradient(original, surrogate, config, theta);

  constexpr double kSufficientDecrease = 1e-4;
  for (long it = 0; it < max_iter; ++it) {
    const double gnorm = grad.norm();
    if (gnorm <= tol) return theta;

    double step = 1.0;
    const double g2 = gnorm * gnorm;
    Eigen::VectorXd candidate;
    double f_new;
    for (;;) {
      candidate = theta - step * grad;
      f_new = logistic_objective(original, surrogate, config, candidate);
      if (f_new <= f - kSufficientDecrease * step * g2) break;
      step *= 0.5;
      if (step < 1e-18) {
        // No descent at machine scale: we are at a numerical stationary
        // point even though the norm test has not fired.
        if (gnorm <= 1e3 * tol) return theta;
        std::vector<double> last(theta.data(), theta.data() + theta.size());
        throw NotConvergedError("logistic line search stalled", it, gnorm, 0.0,
                                std::move(last));
      }
    }
    theta.swap(candidate);
    f = f_new;
    grad = logistic_gradient(original, surrogate, config, theta);
  }
  const double gnorm = grad.norm();
  std::vector<double> last(theta.data(), theta.data() + theta.size());
  throw NotConvergedError("logistic solver hit max_iter", max_iter, gnorm, 0.0,
                          std::move(last));
}

Eigen::VectorXd sequence_estimate(const SequenceModelSpec& spec,
                                  const Eigen::VectorXd& obs_mean,
                                  const Eigen::VectorXd& obs_mean_s,
                                  const MixtureConfig& config) {
  config.validate();
  if (obs_mean.size() != spec.dim() || obs_mean_s.size() != spec.dim()) {
    throw Error(Errc::dim_mismatch,
                "observation means must match the model dimension");
  }
  const double alpha = config.alpha;
  Eigen::VectorXd out(spec.dim());
  for (Eigen::Index k = 0; k < spec.dim(); ++k) {
    out[k] = ((1.0 - alpha) * obs_mean[k] + alpha * obs_mean_s[k]) /
             (1.0 + config.lambda * spec.omega[k]);
  }
  return out;
}

}  // namespace surromix::estimators
