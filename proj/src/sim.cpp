#include "surromix/sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "surromix/estimators.hpp"
#include "surromix/parallel.hpp"

namespace surromix::sim {

namespace {

Eigen::VectorXd unit_axis(int d, int axis) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  v[axis] = 1.0;
  return v;
}

// Everything run_experiment needs to know about the data distributions.
struct Resolved {
  Task task = Task::MeanEstimation;
  int d = 1;
  Eigen::VectorXd theta;
  Eigen::VectorXd theta_s;
  double sigma = 1.0;
  double sigma_s = 1.0;
  std::int64_t test_size = 0;  // classification only
  // Sequence model extras.
  Eigen::VectorXd omega;
  double mu = 1.0;
  double rho_decay = 1.0;
};

Resolved resolve(const ExperimentPlan& plan) {
  Resolved r;
  switch (plan.generator) {
    case GeneratorKind::GaussianMean: {
      const auto& p = std::get<GaussianMeanParams>(plan.generator_params);
      r.task = Task::MeanEstimation;
      r.d = p.d;
      r.sigma = p.sigma;
      r.sigma_s = p.sigma_s;
      r.theta = p.theta ? *p.theta : Eigen::VectorXd::Zero(p.d);
      if (p.theta_s) {
        r.theta_s = *p.theta_s;
      } else {
        r.theta_s = r.theta + std::sqrt(p.gap) * unit_axis(p.d, 0);
      }
      break;
    }
    case GeneratorKind::GaussianMixture: {
      const auto& p = std::get<GaussianMixtureParams>(plan.generator_params);
      r.task = Task::GaussianMixtureClassification;
      r.d = p.d;
      r.test_size = p.test_size;
      r.theta = unit_axis(p.d, 0);
      r.theta_s = std::cos(p.gamma) * unit_axis(p.d, 0) +
                  std::sin(p.gamma) * unit_axis(p.d, 1);
      break;
    }
    case GeneratorKind::HiDimLinear: {
      const auto& p = std::get<HiDimLinearParams>(plan.generator_params);
      r.task = Task::LinearRegression;
      r.d = p.d;
      r.sigma = p.sigma;
      r.sigma_s = p.sigma_s;
      r.theta = p.r * unit_axis(p.d, 0);
      r.theta_s = p.r_s * (std::cos(p.gamma) * unit_axis(p.d, 0) +
                           std::sin(p.gamma) * unit_axis(p.d, 1));
      break;
    }
    case GeneratorKind::SequenceModel: {
      const auto& p = std::get<SequenceModelParams>(plan.generator_params);
      r.task = Task::SequenceModel;
      r.d = static_cast<int>(p.theta_star.size());
      r.theta = p.theta_star;
      r.theta_s = p.theta_star_s;
      r.omega = p.omega;
      r.sigma = p.sigma;
      r.sigma_s = p.sigma_s;
      r.mu = p.mu;
      r.rho_decay = p.rho_decay;
      break;
    }
  }
  return r;
}

SequenceModelSpec sequence_spec_for(const Resolved& r, std::int64_t n,
                                    std::int64_t m) {
  SequenceModelSpec spec;
  spec.theta_star = r.theta;
  spec.theta_star_s = r.theta_s;
  spec.omega = r.omega;
  spec.sigma = r.sigma;
  spec.sigma_s = r.sigma_s;
  spec.n = std::max<std::int64_t>(n, 1);
  spec.m = std::max<std::int64_t>(m, 1);
  spec.mu = r.mu;
  spec.rho_decay = r.rho_decay;
  spec.validate();
  return spec;
}

LabeledDataset empty_dataset(int d, DataSource source) {
  return LabeledDataset(Eigen::MatrixXd(0, d), source);
}

double validation_loss(Task task, const LabeledDataset& validation,
                       const Eigen::VectorXd& theta_hat) {
  const auto count = validation.count();
  switch (task) {
    case Task::MeanEstimation: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < count; ++i) {
        s += (validation.features.row(i).transpose() - theta_hat).squaredNorm();
      }
      return s / double(count);
    }
    case Task::LinearRegression: {
      const Eigen::VectorXd resid =
          validation.responses - validation.features * theta_hat;
      return resid.squaredNorm() / double(count);
    }
    case Task::GaussianMixtureClassification: {
      const Eigen::VectorXd scores = validation.features * theta_hat;
      std::int64_t wrong = 0;
      for (Eigen::Index i = 0; i < count; ++i) {
        const double pred = scores[i] >= 0.0 ? 1.0 : -1.0;
        if (pred != validation.responses[i]) ++wrong;
      }
      return double(wrong) / double(count);
    }
    case Task::SequenceModel:
      throw Error(Errc::task_mismatch,
                  "sequence validation is handled inside run_experiment");
  }
  throw Error(Errc::task_mismatch, "unknown task");
}

Eigen::VectorXd train(Task task, const LabeledDataset& original,
                      const LabeledDataset& surrogate,
                      const MixtureConfig& config) {
  switch (task) {
    case Task::MeanEstimation:
      return estimators::weighted_mean(original, surrogate, config.alpha);
    case Task::LinearRegression:
      return estimators::weighted_ridge(original, surrogate, config);
    case Task::GaussianMixtureClassification:
      return estimators::weighted_logistic(original, surrogate, config);
    case Task::SequenceModel:
      throw Error(Errc::task_mismatch,
                  "sequence training is handled inside run_experiment");
  }
  throw Error(Errc::task_mismatch, "unknown task");
}

struct Cell {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double alpha = 0.0;
};

double run_replicate(const Resolved& r, const ExperimentPlan& plan,
                     const Cell& cell, std::size_t cell_index,
                     std::size_t replicate) {
  auto stream = [&](std::uint64_t purpose) {
    return CounterRng::stream(plan.seed, cell_index, replicate, purpose);
  };
  // A zero-count side forces its weight to zero.
  double alpha = cell.alpha;
  if (cell.n == 0) alpha = 1.0;
  if (cell.m == 0) alpha = 0.0;

  Eigen::VectorXd theta_hat;
  if (r.task == Task::SequenceModel) {
    const SequenceModelSpec spec = sequence_spec_for(r, cell.n, cell.m);
    CounterRng train_rng = stream(0);
    auto [obs, obs_s] = gen_sequence_obs(spec, train_rng);
    if (cell.n == 0) obs.setZero();
    if (cell.m == 0) obs_s.setZero();

    double lambda = plan.lambda_grid.front();
    if (plan.lambda_grid.size() > 1) {
      CounterRng val_rng = stream(2);
      const std::int64_t n_val = validation_size(cell.n);
      Eigen::VectorXd obs_val(spec.dim());
      for (Eigen::Index k = 0; k < spec.dim(); ++k) {
        obs_val[k] = r.theta[k] + r.sigma / std::sqrt(double(n_val)) *
                                      val_rng.next_normal();
      }
      double best_loss = std::numeric_limits<double>::infinity();
      std::vector<double> lambdas = plan.lambda_grid;
      std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
      for (double l : lambdas) {
        const Eigen::VectorXd cand = estimators::sequence_estimate(
            spec, obs, obs_s, MixtureConfig(alpha, l));
        const double loss = (cand - obs_val).squaredNorm();
        if (loss < best_loss) {
          best_loss = loss;
          lambda = l;
        }
      }
    }
    theta_hat = estimators::sequence_estimate(spec, obs, obs_s,
                                              MixtureConfig(alpha, lambda));
  } else {
    CounterRng rng_o = stream(0);
    CounterRng rng_s = stream(1);
    LabeledDataset original = empty_dataset(r.d, DataSource::Original);
    LabeledDataset surrogate = empty_dataset(r.d, DataSource::Surrogate);
    switch (r.task) {
      case Task::MeanEstimation:
        if (cell.n > 0) {
          original = gen_gaussian_mean(r.d, cell.n, r.theta, r.sigma, rng_o,
                                       DataSource::Original);
        }
        if (cell.m > 0) {
          surrogate = gen_gaussian_mean(r.d, cell.m, r.theta_s, r.sigma_s,
                                        rng_s, DataSource::Surrogate);
        }
        break;
      case Task::LinearRegression:
        if (cell.n > 0) {
          original = gen_hidim_linear(r.d, cell.n, r.theta, r.sigma, rng_o,
                                      DataSource::Original);
        }
        if (cell.m > 0) {
          surrogate = gen_hidim_linear(r.d, cell.m, r.theta_s, r.sigma_s,
                                       rng_s, DataSource::Surrogate);
        }
        break;
      case Task::GaussianMixtureClassification:
        if (cell.n > 0) {
          original = gen_gaussian_mixture(r.d, cell.n, r.theta, rng_o,
                                          DataSource::Original);
        }
        if (cell.m > 0) {
          surrogate = gen_gaussian_mixture(r.d, cell.m, r.theta_s, rng_s,
                                           DataSource::Surrogate);
        }
        break;
      case Task::SequenceModel:
        break;
    }

    if (plan.lambda_grid.size() > 1 && r.task != Task::MeanEstimation) {
      CounterRng val_rng = stream(2);
      const std::int64_t n_val = validation_size(cell.n);
      LabeledDataset validation =
          r.task == Task::LinearRegression
              ? gen_hidim_linear(r.d, n_val, r.theta, r.sigma, val_rng,
                                 DataSource::Original)
              : gen_gaussian_mixture(r.d, n_val, r.theta, val_rng,
                                     DataSource::Original);
      const Selection sel =
          select_by_validation(r.task, original, surrogate, {alpha},
                               plan.lambda_grid, validation);
      theta_hat = sel.theta_hat;
    } else {
      theta_hat = train(r.task, original, surrogate,
                        MixtureConfig(alpha, plan.lambda_grid.front()));
    }
  }

  CounterRng test_rng = stream(3);
  const Truth truth{r.task, r.theta};
  return estimate_risk(truth, theta_hat, r.test_size, test_rng).risk;
}

}  // namespace

std::int64_t validation_size(std::int64_t n) {
  return std::max<std::int64_t>(1000, n);
}

LabeledDataset gen_gaussian_mean(int d, std::int64_t n,
                                 const Eigen::VectorXd& theta, double sigma,
                                 CounterRng& rng, DataSource source) {
  if (d < 1 || n < 1) throw Error(Errc::invalid_argument, "d, n must be >= 1");
  if (theta.size() != d) {
    throw Error(Errc::dim_mismatch, "theta length must equal d");
  }
  Eigen::MatrixXd rows(n, d);
  for (std::int64_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      rows(i, j) = theta[j] + sigma * rng.next_normal();
    }
  }
  return LabeledDataset(std::move(rows), source);
}

LabeledDataset gen_gaussian_mixture(int d, std::int64_t n,
                                    const Eigen::VectorXd& theta,
                                    CounterRng& rng, DataSource source) {
  if (d < 1 || n < 1) throw Error(Errc::invalid_argument, "d, n must be >= 1");
  if (theta.size() != d) {
    throw Error(Errc::dim_mismatch, "theta length must equal d");
  }
  if (std::abs(theta.norm() - 1.0) > 1e-8) {
    throw Error(Errc::not_unit_norm, "class mean must be a unit vector");
  }
  Eigen::MatrixXd rows(n, d);
  Eigen::VectorXd labels(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double y = rng.next_uniform() < 0.5 ? 1.0 : -1.0;
    labels[i] = y;
    for (int j = 0; j < d; ++j) {
      rows(i, j) = y * theta[j] + rng.next_normal();
    }
  }
  return LabeledDataset(std::move(rows), std::move(labels), source);
}

LabeledDataset gen_hidim_linear(int d, std::int64_t n,
                                const Eigen::VectorXd& theta, double sigma,
                                CounterRng& rng, DataSource source) {
  if (d < 1 || n < 1) throw Error(Errc::invalid_argument, "d, n must be >= 1");
  if (theta.size() != d) {
    throw Error(Errc::dim_mismatch, "theta length must equal d");
  }
  Eigen::MatrixXd rows(n, d);
  Eigen::VectorXd y(n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) rows(i, j) = rng.next_normal();
    y[i] = rows.row(i).dot(theta) + sigma * rng.next_normal();
  }
  return LabeledDataset(std::move(rows), std::move(y), source);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gen_sequence_obs(
    const SequenceModelSpec& spec, CounterRng& rng) {
  spec.validate();
  Eigen::VectorXd obs(spec.dim()), obs_s(spec.dim());
  const double noise = spec.sigma / std::sqrt(double(spec.n));
  const double noise_s = spec.sigma_s / std::sqrt(double(spec.m));
  for (Eigen::Index k = 0; k < spec.dim(); ++k) {
    obs[k] = spec.theta_star[k] + noise * rng.next_normal();
  }
  for (Eigen::Index k = 0; k < spec.dim(); ++k) {
    obs_s[k] = spec.theta_star_s[k] + noise_s * rng.next_normal();
  }
  return {std::move(obs), std::move(obs_s)};
}

RiskEstimate estimate_risk(const Truth& truth, const Eigen::VectorXd& theta_hat,
                           std::int64_t test_size, CounterRng& rng) {
  if (theta_hat.size() != truth.theta_star.size()) {
    throw Error(Errc::task_mismatch,
                "fitted parameter does not match the truth dimension");
  }
  switch (truth.task) {
    case Task::MeanEstimation:
    case Task::LinearRegression:
    case Task::SequenceModel:
      return {(theta_hat - truth.theta_star).squaredNorm(), 0.0};
    case Task::GaussianMixtureClassification: {
      if (test_size < 1) {
        throw Error(Errc::invalid_argument, "test_size must be >= 1");
      }
      const int d = static_cast<int>(truth.theta_star.size());
      std::int64_t wrong = 0;
      Eigen::VectorXd x(d);
      for (std::int64_t i = 0; i < test_size; ++i) {
        const double y = rng.next_uniform() < 0.5 ? 1.0 : -1.0;
        for (int j = 0; j < d; ++j) {
          x[j] = y * truth.theta_star[j] + rng.next_normal();
        }
        const double pred = x.dot(theta_hat) >= 0.0 ? 1.0 : -1.0;
        if (pred != y) ++wrong;
      }
      const double p = double(wrong) / double(test_size);
      return {p, std::sqrt(p * (1.0 - p) / double(test_size))};
    }
  }
  throw Error(Errc::task_mismatch, "unknown task");
}

Selection select_by_validation(Task task, const LabeledDataset& original,
                               const LabeledDataset& surrogate,
                               const std::vector<double>& alphas,
                               const std::vector<double>& lambdas,
                               const LabeledDataset& validation) {
  if (alphas.empty() || lambdas.empty()) {
    throw Error(Errc::invalid_argument, "candidate grids must be non-empty");
  }
  if (validation.count() < 1) {
    throw Error(Errc::empty_dataset, "validation set is empty");
  }
  std::vector<double> lam_desc = lambdas;
  std::sort(lam_desc.begin(), lam_desc.end(), std::greater<>());
  std::vector<double> alp_asc = alphas;
  std::sort(alp_asc.begin(), alp_asc.end());

  Selection best;
  double best_loss = std::numeric_limits<double>::infinity();
  bool found = false;
  for (double a : alp_asc) {
    for (double l : lam_desc) {
      const Eigen::VectorXd cand =
          train(task, original, surrogate, MixtureConfig(a, l));
      const double loss = validation_loss(task, validation, cand);
      if (!found || loss < best_loss) {
        best = {a, l, cand};
        best_loss = loss;
        found = true;
      }
    }
  }
  return best;
}

std::vector<ResultRow> run_experiment(const ExperimentPlan& plan, int threads) {
  plan.validate();
  const Resolved r = resolve(plan);

  std::vector<std::int64_t> ns = plan.n_grid;
  std::vector<std::int64_t> ms = plan.m_grid;
  std::vector<double> alphas = plan.alpha_grid;
  std::sort(ns.begin(), ns.end());
  std::sort(ms.begin(), ms.end());
  std::sort(alphas.begin(), alphas.end());

  std::vector<Cell> cells;
  for (std::int64_t n : ns) {
    for (std::int64_t m : ms) {
      if (n == 0 && m == 0) continue;  // plan validation rejects this anyway
      for (double a : alphas) cells.push_back({n, m, a});
    }
  }

  const std::size_t reps = static_cast<std::size_t>(plan.replicates);
  std::vector<double> risks(cells.size() * reps, 0.0);
  parallel_for(cells.size() * reps, threads, [&](std::size_t i) {
    const std::size_t cell_index = i / reps;
    const std::size_t replicate = i % reps;
    try {
      risks[i] =
          run_replicate(r, plan, cells[cell_index], cell_index, replicate);
    } catch (const Error& e) {
      const Cell& c = cells[cell_index];
      std::ostringstream os;
      os << "cell (n=" << c.n << ", m=" << c.m << ", alpha=" << c.alpha
         << ") replicate " << replicate << " failed: " << e.what();
      throw Error(e.code(), os.str());
    }
  });

  std::vector<ResultRow> rows;
  rows.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const std::span<const double> cell_risks(&risks[c * reps], reps);
    const double mean = pairwise_sum(cell_risks) / double(reps);
    double se = 0.0;
    if (reps > 1) {
      std::vector<double> sq(reps);
      for (std::size_t j = 0; j < reps; ++j) {
        const double d = cell_risks[j] - mean;
        sq[j] = d * d;
      }
      const double var = pairwise_sum(sq) / double(reps - 1);
      se = std::sqrt(var / double(reps));
    }
    rows.push_back({cells[c].n, cells[c].m, cells[c].alpha, mean, se,
                    plan.replicates});
  }
  return rows;
}

}  // namespace surromix::sim
