#include "surromix/workflows.hpp"

#include <cmath>
#include <sstream>

#include "surromix/csv.hpp"
#include "surromix/json_io.hpp"
#include "surromix/oracles.hpp"
#include "surromix/scaling.hpp"
#include "surromix/sim.hpp"

namespace surromix::workflows {

namespace {

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = double(i) / 100.0;
  return grid;
}

std::vector<double> alpha_grid_from_params(const json& params) {
  if (!params.contains("alpha_grid")) return default_alpha_grid();
  const json& g = params.at("alpha_grid");
  if (g.is_string()) return parse_alpha_grid(g.get<std::string>());
  if (!g.is_array()) {
    throw Error(Errc::parse_error, "alpha_grid must be an array or spec string");
  }
  std::vector<double> grid;
  for (const json& e : g) grid.push_back(e.get<double>());
  double prev = -1.0;
  for (double a : grid) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(Errc::invalid_argument, "alpha_grid values must lie in [0,1]");
    }
    if (a <= prev) {
      throw Error(Errc::invalid_argument,
                  "alpha_grid values must be strictly increasing");
    }
    prev = a;
  }
  if (grid.empty()) {
    throw Error(Errc::invalid_argument, "alpha_grid must be non-empty");
  }
  return grid;
}

std::string argmin_comment(const std::vector<std::pair<double, double>>& pts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].second < pts[best].second) best = i;
  }
  std::ostringstream os;
  os << "alpha_star=" << csv::fmt17(pts[best].first)
     << ", risk_star=" << csv::fmt17(pts[best].second);
  return os.str();
}

}  // namespace

std::vector<double> parse_alpha_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double start = 0.0, stop = 0.0;
    long count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> start >> c1 >> stop >> c2 >> count) || c1 != ':' ||
        c2 != ':' || !ss.eof()) {
      throw Error(Errc::parse_error,
                  "alpha grid spec must be start:stop:count, got '" + spec +
                      "'");
    }
    if (count < 1) {
      throw Error(Errc::invalid_argument, "alpha grid count must be >= 1");
    }
    if (count == 1) {
      grid.push_back(start);
    } else {
      for (long i = 0; i < count; ++i) {
        grid.push_back(start + (stop - start) * double(i) / double(count - 1));
      }
    }
  } else {
    std::istringstream ss(spec);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t pos = 0;
        grid.push_back(std::stod(field, &pos));
        if (pos != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw Error(Errc::parse_error,
                    "alpha grid entry is not a number: '" + field + "'");
      }
    }
  }
  if (grid.empty()) {
    throw Error(Errc::invalid_argument, "alpha grid must be non-empty");
  }
  double prev = -1.0;
  for (double a : grid) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(Errc::invalid_argument,
                  "alpha grid values must lie in [0,1]");
    }
    if (a <= prev) {
      throw Error(Errc::invalid_argument,
                  "alpha grid values must be strictly increasing");
    }
    prev = a;
  }
  return grid;
}

void simulate_file(const std::string& plan_path, const std::string& out_csv,
                   std::optional<std::uint64_t> seed_override, int threads) {
  ExperimentPlan plan = experiment_plan_from_json(load_json_file(plan_path));
  if (seed_override) plan.seed = *seed_override;
  const auto rows = sim::run_experiment(plan, threads);
  csv::write_results(out_csv, rows);
}

void fit_file(const std::string& original_csv, const std::string& surrogate_csv,
              const std::string& out_json) {
  const auto original = csv::read_loss_table(original_csv);
  const auto surrogate = csv::read_loss_table(surrogate_csv);
  const ScalingLawModel model = scaling::build_model(original, surrogate);
  save_json_file(out_json, to_json(model));
}

void predict_file(const std::string& model_json, std::int64_t n,
                  std::int64_t m, const std::string& alpha_grid_spec,
                  const std::string& out_csv) {
  const ScalingLawModel model =
      scaling_model_from_json(load_json_file(model_json));
  const auto grid = parse_alpha_grid(alpha_grid_spec);
  std::vector<std::pair<double, double>> points;
  points.reserve(grid.size());
  for (double a : grid) {
    points.emplace_back(a, scaling::predict_mixture_risk(model, n, m, a));
  }
  const auto opt = scaling::optimal_alpha(model, n, m);
  std::ostringstream comment;
  comment << "alpha_star=" << csv::fmt17(opt.alpha_star)
          << ", risk_star=" << csv::fmt17(opt.risk_star);
  csv::write_curve(out_csv, "predicted_risk", points, comment.str());
}

std::string plan_line(const std::string& model_json, std::int64_t n,
                      double target_risk) {
  const ScalingLawModel model =
      scaling_model_from_json(load_json_file(model_json));
  const auto m = scaling::required_surrogate(model, n, target_risk);
  if (!m) return "infeasible";
  const auto opt = scaling::optimal_alpha(model, n, *m);
  std::ostringstream os;
  os << "m=" << *m << " alpha=" << csv::fmt17(opt.alpha_star)
     << " predicted_risk=" << csv::fmt17(opt.risk_star);
  return os.str();
}

void oracle_file(const std::string& setting, const std::string& params_json,
                 const std::string& out_csv, int threads) {
  const json params = load_json_file(params_json);
  const auto grid = alpha_grid_from_params(params);
  std::vector<std::pair<double, double>> points;
  points.reserve(grid.size());

  if (setting == "mean") {
    const auto d = params.at("d").get<std::int64_t>();
    const auto n = params.at("n").get<std::int64_t>();
    const auto m = params.at("m").get<std::int64_t>();
    const auto gap = params.at("gap").get<double>();
    for (double a : grid) {
      points.emplace_back(a, oracles::mean_risk(d, n, m, a, gap));
    }
  } else if (setting == "sequence") {
    const SequenceModelSpec spec = sequence_spec_from_json(params.at("spec"));
    const json& lam = params.at("lambda");
    for (double a : grid) {
      const double lambda = lam.is_string()
                                ? oracles::sequence_lambda_star(spec, a)
                                : lam.get<double>();
      points.emplace_back(
          a, oracles::sequence_risk(spec, MixtureConfig(a, lambda)).risk);
    }
  } else if (setting == "nonparam") {
    const NonparamSpec spec = nonparam_spec_from_json(params.at("spec"));
    for (double a : grid) {
      points.emplace_back(a, oracles::nonparam_risk(spec, a));
    }
  } else if (setting == "lowdim") {
    const LowDimCurvature curv =
        lowdim_curvature_from_json(params.at("curvature"));
    const auto n = params.at("n").get<std::int64_t>();
    const auto m = params.at("m").get<std::int64_t>();
    for (double a : grid) {
      points.emplace_back(a, oracles::lowdim_risk(curv, n, m, a));
    }
  } else if (setting == "hidim") {
    const HiDimSpec spec = hidim_spec_from_json(params.at("spec"));
    const RiskCurve curve = oracles::hidim_risk_curve(spec, grid, threads);
    for (const auto& p : curve.points) points.emplace_back(p.alpha, p.risk);
  } else {
    throw Error(Errc::invalid_argument,
                "unknown oracle setting: " + setting +
                    " (expected mean|sequence|nonparam|lowdim|hidim)");
  }

  csv::write_curve(out_csv, "risk", points, argmin_comment(points));
}

}  // namespace surromix::workflows
