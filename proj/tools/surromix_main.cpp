// surromix command-line front end. Talks to the shared library exclusively
// through the C API, and maps its status codes onto the exit-code contract:
// 0 success, 2 bad input, 3 numeric failure.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "surromix/surromix.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 2;
constexpr int kExitNumeric = 3;

int exit_code_of(smx_status st) {
  switch (st) {
    case SMX_OK:
      return kExitOk;
    case SMX_ERR_NUMERIC:
      return kExitNumeric;
    default:
      return kExitUser;
  }
}

int finish(smx_status st) {
  if (st != SMX_OK) {
    std::cerr << "error: " << smx_last_error() << "\n";
  }
  return exit_code_of(st);
}

// --threads wins over SURROGATE_MIX_THREADS; 0 means all logical cores.
int resolve_threads(int flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("SURROGATE_MIX_THREADS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric SURROGATE_MIX_THREADS\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted ERM with surrogate data: simulation, risk oracles "
               "and scaling-law planning"};
  app.set_version_flag("--version", smx_version());
  app.require_subcommand(1);

  int threads = 0;
  bool threads_given = false;

  // simulate
  std::string sim_plan, sim_out;
  std::uint64_t sim_seed = 0;
  bool sim_seed_given = false;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Run an experiment plan JSON, write a results CSV");
  sim_cmd->add_option("plan", sim_plan, "experiment plan JSON")->required();
  sim_cmd->add_option("out", sim_out, "output CSV path")->required();
  sim_cmd->add_option("--seed", sim_seed, "override the plan's seed")
      ->each([&](const std::string&) { sim_seed_given = true; });
  sim_cmd
      ->add_option("--threads", threads,
                   "worker thread cap (default: all cores)")
      ->each([&](const std::string&) { threads_given = true; });

  // fit
  std::string fit_orig, fit_surr, fit_out;
  auto* fit_cmd = app.add_subcommand(
      "fit", "Fit per-source power laws from n,loss tables, write model JSON");
  fit_cmd->add_option("original", fit_orig, "original-data loss CSV")
      ->required();
  fit_cmd->add_option("surrogate", fit_surr, "surrogate-data loss CSV")
      ->required();
  fit_cmd->add_option("out", fit_out, "output model JSON path")->required();

  // predict
  std::string pred_model, pred_alphas = "0:1:101", pred_out;
  std::int64_t pred_n = 0, pred_m = 0;
  auto* pred_cmd = app.add_subcommand(
      "predict", "Predicted risk curve over an alpha grid for given n, m");
  pred_cmd->add_option("model", pred_model, "scaling-law model JSON")
      ->required();
  pred_cmd->add_option("out", pred_out, "output CSV path")->required();
  pred_cmd->add_option("--n", pred_n, "original sample count")->required();
  pred_cmd->add_option("--m", pred_m, "surrogate sample count")->required();
  pred_cmd->add_option("--alphas", pred_alphas,
                       "alpha grid, start:stop:count or comma list");

  // plan
  std::string plan_model;
  std::int64_t plan_n = 0;
  double plan_target = 0.0;
  auto* plan_cmd = app.add_subcommand(
      "plan", "Smallest surrogate count m reaching a target risk");
  plan_cmd->add_option("model", plan_model, "scaling-law model JSON")
      ->required();
  plan_cmd->add_option("--n", plan_n, "original sample count")->required();
  plan_cmd->add_option("--target", plan_target, "target risk")->required();

  // oracle
  std::string ora_setting, ora_params, ora_out;
  auto* ora_cmd = app.add_subcommand(
      "oracle", "Analytic risk curve for one theoretical setting");
  ora_cmd
      ->add_option("--setting", ora_setting,
                   "one of mean|sequence|nonparam|lowdim|hidim")
      ->required();
  ora_cmd->add_option("params", ora_params, "setting parameters JSON")
      ->required();
  ora_cmd->add_option("out", ora_out, "output CSV path")->required();
  ora_cmd
      ->add_option("--threads", threads,
                   "worker thread cap (default: all cores)")
      ->each([&](const std::string&) { threads_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUser;
  }

  const int n_threads = resolve_threads(threads, threads_given);

  if (sim_cmd->parsed()) {
    const std::uint64_t* seed = sim_seed_given ? &sim_seed : nullptr;
    return finish(
        smx_simulate_file(sim_plan.c_str(), sim_out.c_str(), seed, n_threads));
  }
  if (fit_cmd->parsed()) {
    return finish(
        smx_fit_file(fit_orig.c_str(), fit_surr.c_str(), fit_out.c_str()));
  }
  if (pred_cmd->parsed()) {
    return finish(smx_predict_file(pred_model.c_str(), pred_n, pred_m,
                                   pred_alphas.c_str(), pred_out.c_str()));
  }
  if (plan_cmd->parsed()) {
    char line[256];
    const smx_status st = smx_plan_file(plan_model.c_str(), plan_n,
                                        plan_target, line, sizeof(line));
    if (st == SMX_OK) std::cout << line << "\n";
    return finish(st);
  }
  if (ora_cmd->parsed()) {
    return finish(smx_oracle_file(ora_setting.c_str(), ora_params.c_str(),
                                  ora_out.c_str(), n_threads));
  }
  return kExitUser;
}
