#include "surromix/json_io.hpp"

#include <fstream>

namespace surromix {

namespace {

const json& get_field(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) {
    throw Error(Errc::parse_error, std::string("missing field: ") + field);
  }
  return *it;
}

double get_double(const json& j, const char* field) {
  const json& f = get_field(j, field);
  if (!f.is_number()) {
    throw Error(Errc::parse_error, std::string(field) + " must be a number");
  }
  return f.get<double>();
}

double get_double_or(const json& j, const char* field, double fallback) {
  return j.contains(field) ? get_double(j, field) : fallback;
}

std::int64_t get_int(const json& j, const char* field) {
  const json& f = get_field(j, field);
  if (!f.is_number_integer()) {
    throw Error(Errc::parse_error, std::string(field) + " must be an integer");
  }
  return f.get<std::int64_t>();
}

bool get_bool_or(const json& j, const char* field, bool fallback) {
  if (!j.contains(field)) return fallback;
  const json& f = j.at(field);
  if (!f.is_boolean()) {
    throw Error(Errc::parse_error, std::string(field) + " must be a boolean");
  }
  return f.get<bool>();
}

std::string get_string(const json& j, const char* field) {
  const json& f = get_field(j, field);
  if (!f.is_string()) {
    throw Error(Errc::parse_error, std::string(field) + " must be a string");
  }
  return f.get<std::string>();
}

template <typename T>
std::vector<T> get_array(const json& j, const char* field) {
  const json& f = get_field(j, field);
  if (!f.is_array()) {
    throw Error(Errc::parse_error, std::string(field) + " must be an array");
  }
  std::vector<T> out;
  out.reserve(f.size());
  for (const json& e : f) {
    if (!e.is_number()) {
      throw Error(Errc::parse_error,
                  std::string(field) + " must contain only numbers");
    }
    out.push_back(e.get<T>());
  }
  return out;
}

json coeff_map_to_json(const NonparamSpec::CoeffMap& m) {
  json arr = json::array();
  for (const auto& [q, v] : m) {
    arr.push_back({{"q", q}, {"re", v.real()}, {"im", v.imag()}});
  }
  return arr;
}

NonparamSpec::CoeffMap coeff_map_from_json(const json& j, const char* field) {
  const json& f = get_field(j, field);
  if (!f.is_array()) {
    throw Error(Errc::parse_error, std::string(field) + " must be an array");
  }
  NonparamSpec::CoeffMap out;
  for (const json& e : f) {
    std::vector<int> q;
    for (const json& c : get_field(e, "q")) q.push_back(c.get<int>());
    out[q] = {get_double(e, "re"), get_double(e, "im")};
  }
  return out;
}

}  // namespace

json to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd vector_from_json(const json& j, const char* field) {
  auto vals = get_array<double>(j, field);
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = vals[i];
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* field) {
  const json& f = get_field(j, field);
  if (!f.is_array()) {
    throw Error(Errc::parse_error,
                std::string(field) + " must be an array of rows");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(f.size());
  Eigen::Index cols = 0;
  if (rows > 0) cols = static_cast<Eigen::Index>(f[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = f[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(Errc::parse_error,
                  std::string(field) + " rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

json to_json(const LabeledDataset& v) {
  return {{"features", to_json(v.features)},
          {"responses", to_json(v.responses)},
          {"source", to_string(v.source)}};
}

LabeledDataset dataset_from_json(const json& j) {
  LabeledDataset d;
  d.features = matrix_from_json(j, "features");
  d.responses = vector_from_json(j, "responses");
  d.source = data_source_from_string(get_string(j, "source"));
  d.validate();
  return d;
}

json to_json(const MixtureConfig& v) {
  return {{"alpha", v.alpha}, {"lambda", v.lambda}};
}

MixtureConfig mixture_config_from_json(const json& j) {
  return MixtureConfig(get_double(j, "alpha"), get_double(j, "lambda"));
}

json to_json(const PowerLawFit& v) {
  return {{"asymptote", v.asymptote},
          {"coefficient", v.coefficient},
          {"exponent", v.exponent},
          {"residual", v.residual},
          {"degenerate", v.degenerate}};
}

PowerLawFit power_law_fit_from_json(const json& j) {
  PowerLawFit f;
  f.asymptote = get_double(j, "asymptote");
  f.coefficient = get_double(j, "coefficient");
  f.exponent = get_double(j, "exponent");
  f.residual = get_double(j, "residual");
  f.degenerate = get_bool_or(j, "degenerate", false);
  f.validate();
  return f;
}

json to_json(const ScalingLawModel& v) {
  return {{"bayes_risk", v.bayes_risk},
          {"surrogate_gap", v.surrogate_gap},
          {"original_fit", to_json(v.original_fit)},
          {"surrogate_fit", to_json(v.surrogate_fit)},
          {"beta", v.beta},
          {"gap_clamped", v.gap_clamped}};
}

ScalingLawModel scaling_model_from_json(const json& j) {
  ScalingLawModel m;
  m.bayes_risk = get_double(j, "bayes_risk");
  m.surrogate_gap = get_double(j, "surrogate_gap");
  m.original_fit = power_law_fit_from_json(get_field(j, "original_fit"));
  m.surrogate_fit = power_law_fit_from_json(get_field(j, "surrogate_fit"));
  m.beta = get_double(j, "beta");
  m.gap_clamped = get_bool_or(j, "gap_clamped", false);
  m.validate();
  return m;
}

json to_json(const RiskCurve& v) {
  json pts = json::array();
  for (const auto& p : v.points) {
    pts.push_back(
        {{"alpha", p.alpha}, {"risk", p.risk}, {"std_error", p.std_error}});
  }
  return {{"points", pts}};
}

RiskCurve risk_curve_from_json(const json& j) {
  RiskCurve c;
  for (const json& e : get_field(j, "points")) {
    c.points.push_back({get_double(e, "alpha"), get_double(e, "risk"),
                        get_double(e, "std_error")});
  }
  c.validate();
  return c;
}

json to_json(const SequenceModelSpec& v) {
  return {{"theta_star", to_json(v.theta_star)},
          {"theta_star_s", to_json(v.theta_star_s)},
          {"omega", to_json(v.omega)},
          {"sigma", v.sigma},
          {"sigma_s", v.sigma_s},
          {"n", v.n},
          {"m", v.m},
          {"mu", v.mu},
          {"rho_decay", v.rho_decay}};
}

SequenceModelSpec sequence_spec_from_json(const json& j) {
  SequenceModelSpec s;
  s.theta_star = vector_from_json(j, "theta_star");
  s.theta_star_s = vector_from_json(j, "theta_star_s");
  s.omega = vector_from_json(j, "omega");
  s.sigma = get_double(j, "sigma");
  s.sigma_s = get_double(j, "sigma_s");
  s.n = get_int(j, "n");
  s.m = get_int(j, "m");
  s.mu = get_double(j, "mu");
  s.rho_decay = get_double(j, "rho_decay");
  s.validate();
  return s;
}

json to_json(const NonparamSpec& v) {
  return {{"dim", v.dim},
          {"penalty_order", v.penalty_order},
          {"target_coeffs", coeff_map_to_json(v.target_coeffs)},
          {"surrogate_coeffs", coeff_map_to_json(v.surrogate_coeffs)},
          {"truncation", v.truncation},
          {"sigma", v.sigma},
          {"sigma_s", v.sigma_s},
          {"n", v.n},
          {"m", v.m},
          {"lambda", v.lambda}};
}

NonparamSpec nonparam_spec_from_json(const json& j) {
  NonparamSpec s;
  s.dim = static_cast<int>(get_int(j, "dim"));
  s.penalty_order = get_double(j, "penalty_order");
  s.target_coeffs = coeff_map_from_json(j, "target_coeffs");
  s.surrogate_coeffs = coeff_map_from_json(j, "surrogate_coeffs");
  s.truncation = static_cast<int>(get_int(j, "truncation"));
  s.sigma = get_double(j, "sigma");
  s.sigma_s = get_double(j, "sigma_s");
  s.n = get_int(j, "n");
  s.m = get_int(j, "m");
  s.lambda = get_double(j, "lambda");
  s.validate();
  return s;
}

json to_json(const HiDimSpec& v) {
  return {{"delta", v.delta},   {"delta_s", v.delta_s}, {"r", v.r},
          {"r_s", v.r_s},       {"gamma", v.gamma},     {"sigma", v.sigma},
          {"sigma_s", v.sigma_s}, {"lambda", v.lambda}};
}

HiDimSpec hidim_spec_from_json(const json& j) {
  HiDimSpec s;
  s.delta = get_double(j, "delta");
  s.delta_s = get_double(j, "delta_s");
  s.r = get_double(j, "r");
  s.r_s = get_double(j, "r_s");
  s.gamma = get_double(j, "gamma");
  s.sigma = get_double(j, "sigma");
  s.sigma_s = get_double(j, "sigma_s");
  s.lambda = get_double(j, "lambda");
  s.validate();
  return s;
}

json to_json(const HiDimSolution& v) {
  return {{"xi", v.xi},         {"xi_perp", v.xi_perp}, {"omega", v.omega},
          {"rho_bar", v.rho_bar}, {"t", v.t},           {"rho", v.rho},
          {"rho_s", v.rho_s},   {"tau", v.tau},         {"tau_s", v.tau_s},
          {"risk", v.risk}};
}

HiDimSolution hidim_solution_from_json(const json& j) {
  HiDimSolution s;
  s.xi = get_double(j, "xi");
  s.xi_perp = get_double(j, "xi_perp");
  s.omega = get_double(j, "omega");
  s.rho_bar = get_double(j, "rho_bar");
  s.t = get_double(j, "t");
  s.rho = get_double(j, "rho");
  s.rho_s = get_double(j, "rho_s");
  s.tau = get_double(j, "tau");
  s.tau_s = get_double(j, "tau_s");
  s.risk = get_double(j, "risk");
  s.validate();
  return s;
}

json to_json(const LowDimCurvature& v) {
  return {{"hessian", to_json(v.hessian)},
          {"cov_original", to_json(v.cov_original)},
          {"cov_surrogate", to_json(v.cov_surrogate)},
          {"shift_gradient", to_json(v.shift_gradient)}};
}

LowDimCurvature lowdim_curvature_from_json(const json& j) {
  LowDimCurvature c;
  c.hessian = matrix_from_json(j, "hessian");
  c.cov_original = matrix_from_json(j, "cov_original");
  c.cov_surrogate = matrix_from_json(j, "cov_surrogate");
  c.shift_gradient = vector_from_json(j, "shift_gradient");
  c.validate();
  return c;
}

json to_json(const ExperimentPlan& v) {
  json params;
  switch (v.generator) {
    case GeneratorKind::GaussianMean: {
      const auto& p = std::get<GaussianMeanParams>(v.generator_params);
      params = {{"d", p.d},
                {"sigma", p.sigma},
                {"sigma_s", p.sigma_s},
                {"gap", p.gap}};
      if (p.theta) params["theta"] = to_json(*p.theta);
      if (p.theta_s) params["theta_s"] = to_json(*p.theta_s);
      break;
    }
    case GeneratorKind::GaussianMixture: {
      const auto& p = std::get<GaussianMixtureParams>(v.generator_params);
      params = {{"d", p.d}, {"gamma", p.gamma}, {"test_size", p.test_size}};
      break;
    }
    case GeneratorKind::HiDimLinear: {
      const auto& p = std::get<HiDimLinearParams>(v.generator_params);
      params = {{"d", p.d},         {"r", p.r},
                {"r_s", p.r_s},     {"gamma", p.gamma},
                {"sigma", p.sigma}, {"sigma_s", p.sigma_s}};
      break;
    }
    case GeneratorKind::SequenceModel: {
      const auto& p = std::get<SequenceModelParams>(v.generator_params);
      params = {{"theta_star", to_json(p.theta_star)},
                {"theta_star_s", to_json(p.theta_star_s)},
                {"omega", to_json(p.omega)},
                {"sigma", p.sigma},
                {"sigma_s", p.sigma_s},
                {"mu", p.mu},
                {"rho_decay", p.rho_decay}};
      break;
    }
  }
  return {{"n_grid", v.n_grid},
          {"m_grid", v.m_grid},
          {"alpha_grid", v.alpha_grid},
          {"lambda_grid", v.lambda_grid},
          {"replicates", v.replicates},
          {"seed", v.seed},
          {"generator", to_string(v.generator)},
          {"generator_params", params}};
}

ExperimentPlan experiment_plan_from_json(const json& j) {
  ExperimentPlan p;
  p.n_grid = get_array<std::int64_t>(j, "n_grid");
  p.m_grid = get_array<std::int64_t>(j, "m_grid");
  p.alpha_grid = get_array<double>(j, "alpha_grid");
  p.lambda_grid = get_array<double>(j, "lambda_grid");
  p.replicates = static_cast<int>(get_int(j, "replicates"));
  {
    const json& f = get_field(j, "seed");
    if (!f.is_number_integer() && !f.is_number_unsigned()) {
      throw Error(Errc::parse_error, "seed must be an integer");
    }
    p.seed = f.get<std::uint64_t>();
  }
  p.generator = generator_kind_from_string(get_string(j, "generator"));
  const json& gp = get_field(j, "generator_params");
  switch (p.generator) {
    case GeneratorKind::GaussianMean: {
      GaussianMeanParams g;
      g.d = static_cast<int>(get_int(gp, "d"));
      g.sigma = get_double_or(gp, "sigma", 1.0);
      g.sigma_s = get_double_or(gp, "sigma_s", 1.0);
      g.gap = get_double_or(gp, "gap", 0.0);
      if (gp.contains("theta")) g.theta = vector_from_json(gp, "theta");
      if (gp.contains("theta_s")) g.theta_s = vector_from_json(gp, "theta_s");
      p.generator_params = std::move(g);
      break;
    }
    case GeneratorKind::GaussianMixture: {
      GaussianMixtureParams g;
      g.d = static_cast<int>(get_int(gp, "d"));
      g.gamma = get_double_or(gp, "gamma", 0.0);
      g.test_size = gp.contains("test_size") ? get_int(gp, "test_size")
                                             : std::int64_t{100000};
      p.generator_params = g;
      break;
    }
    case GeneratorKind::HiDimLinear: {
      HiDimLinearParams g;
      g.d = static_cast<int>(get_int(gp, "d"));
      g.r = get_double_or(gp, "r", 1.0);
      g.r_s = get_double_or(gp, "r_s", 1.0);
      g.gamma = get_double_or(gp, "gamma", 0.0);
      g.sigma = get_double_or(gp, "sigma", 1.0);
      g.sigma_s = get_double_or(gp, "sigma_s", 1.0);
      p.generator_params = g;
      break;
    }
    case GeneratorKind::SequenceModel: {
      SequenceModelParams g;
      g.theta_star = vector_from_json(gp, "theta_star");
      g.theta_star_s = vector_from_json(gp, "theta_star_s");
      g.omega = vector_from_json(gp, "omega");
      g.sigma = get_double_or(gp, "sigma", 1.0);
      g.sigma_s = get_double_or(gp, "sigma_s", 1.0);
      g.mu = get_double_or(gp, "mu", 1.0);
      g.rho_decay = get_double_or(gp, "rho_decay", 1.0);
      p.generator_params = std::move(g);
      break;
    }
  }
  p.validate();
  return p;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::io_error, "cannot open file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Errc::io_error, "cannot open file for writing: " + path);
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw Error(Errc::io_error, "failed writing file: " + path);
  }
}

}  // namespace surromix
