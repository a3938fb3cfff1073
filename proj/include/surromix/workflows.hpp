#ifndef SURROMIX_WORKFLOWS_HPP
#define SURROMIX_WORKFLOWS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// File-in/file-out entry points behind the CLI subcommands and the C API.
// Every workflow is a pure function of its input files plus arguments; all
// failures surface as surromix::Error.

namespace surromix::workflows {

// Runs the experiment plan and writes the results CSV. seed_override, when
// present, replaces the plan's seed. threads = 0 means all cores; the
// output bytes are independent of the thread count.
void simulate_file(const std::string& plan_path, const std::string& out_csv,
                   std::optional<std::uint64_t> seed_override, int threads);

// Fits both loss tables (header "n,loss") and writes the scaling-law model
// JSON.
void fit_file(const std::string& original_csv, const std::string& surrogate_csv,
              const std::string& out_json);

// Predicted risk curve over an alpha grid, plus a trailing
// "# alpha_star=..., risk_star=..." comment from the continuous optimum.
void predict_file(const std::string& model_json, std::int64_t n,
                  std::int64_t m, const std::string& alpha_grid_spec,
                  const std::string& out_csv);

// Surrogate planning: the smallest m whose optimally weighted predicted
// risk meets the target. Returns "m=<v> alpha=<v> predicted_risk=<v>" or
// "infeasible".
std::string plan_line(const std::string& model_json, std::int64_t n,
                      double target_risk);

// Analytic risk curve for one of the settings {mean, sequence, nonparam,
// lowdim, hidim}, read from a params JSON; writes "alpha,risk" rows with an
// argmin comment. threads caps grid-point parallelism (0 = all cores);
// the output bytes do not depend on it.
void oracle_file(const std::string& setting, const std::string& params_json,
                 const std::string& out_csv, int threads = 0);

// Alpha grid specs: either "start:stop:count" (inclusive, evenly spaced) or
// a comma-separated list. Values must be strictly increasing within [0,1].
std::vector<double> parse_alpha_grid(const std::string& spec);

}  // namespace surromix::workflows

#endif
