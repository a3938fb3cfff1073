#include "surromix/surromix.h"

#include <cstring>
#include <string>

#include "surromix/json_io.hpp"
#include "surromix/oracles.hpp"
#include "surromix/scaling.hpp"
#include "surromix/workflows.hpp"

// extern-C boundary: translates exceptions into status codes and keeps the
// message in thread-local storage.

namespace {

thread_local std::string g_last_error;

smx_status status_of(const surromix::Error& e) {
  using surromix::Errc;
  switch (e.code()) {
    case Errc::io_error:
      return SMX_ERR_IO;
    case Errc::not_converged:
    case Errc::singular_system:
    case Errc::singular_hessian:
      return SMX_ERR_NUMERIC;
    default:
      return SMX_ERR_INVALID;
  }
}

template <typename Fn>
smx_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SMX_OK;
  } catch (const surromix::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SMX_ERR_INVALID;
  }
}

smx_status invalid(const char* msg) {
  g_last_error = msg;
  return SMX_ERR_INVALID;
}

}  // namespace

struct smx_model {
  surromix::ScalingLawModel model;
};

extern "C" {

const char* smx_version(void) { return "0.1.0"; }

const char* smx_last_error(void) { return g_last_error.c_str(); }

smx_status smx_simulate_file(const char* plan_json_path,
                             const char* out_csv_path,
                             const uint64_t* seed_override, int threads) {
  if (!plan_json_path || !out_csv_path) return invalid("null path");
  return guarded([&] {
    std::optional<std::uint64_t> seed;
    if (seed_override) seed = *seed_override;
    surromix::workflows::simulate_file(plan_json_path, out_csv_path, seed,
                                       threads);
  });
}

smx_status smx_fit_file(const char* original_csv_path,
                        const char* surrogate_csv_path,
                        const char* out_json_path) {
  if (!original_csv_path || !surrogate_csv_path || !out_json_path) {
    return invalid("null path");
  }
  return guarded([&] {
    surromix::workflows::fit_file(original_csv_path, surrogate_csv_path,
                                  out_json_path);
  });
}

smx_status smx_predict_file(const char* model_json_path, int64_t n, int64_t m,
                            const char* alpha_grid_spec,
                            const char* out_csv_path) {
  if (!model_json_path || !alpha_grid_spec || !out_csv_path) {
    return invalid("null argument");
  }
  return guarded([&] {
    surromix::workflows::predict_file(model_json_path, n, m, alpha_grid_spec,
                                      out_csv_path);
  });
}

smx_status smx_plan_file(const char* model_json_path, int64_t n,
                         double target_risk, char* line_out, size_t line_cap) {
  if (!model_json_path || !line_out || line_cap == 0) {
    return invalid("null argument");
  }
  std::string line;
  const smx_status st = guarded([&] {
    line = surromix::workflows::plan_line(model_json_path, n, target_risk);
  });
  if (st != SMX_OK) return st;
  if (line.size() + 1 > line_cap) {
    g_last_error = "plan line needs " + std::to_string(line.size() + 1) +
                   " bytes";
    return SMX_ERR_BUFFER;
  }
  std::memcpy(line_out, line.c_str(), line.size() + 1);
  return SMX_OK;
}

smx_status smx_oracle_file(const char* setting, const char* params_json_path,
                           const char* out_csv_path, int threads) {
  if (!setting || !params_json_path || !out_csv_path) {
    return invalid("null argument");
  }
  return guarded([&] {
    surromix::workflows::oracle_file(setting, params_json_path, out_csv_path,
                                     threads);
  });
}

smx_status smx_model_from_json_file(const char* path, smx_model** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    auto model = surromix::scaling_model_from_json(
        surromix::load_json_file(path));
    *out = new smx_model{std::move(model)};
  });
}

smx_status smx_model_fit(const int64_t* n_original, const double* loss_original,
                         size_t count_original, const int64_t* n_surrogate,
                         const double* loss_surrogate, size_t count_surrogate,
                         smx_model** out) {
  if (!n_original || !loss_original || !n_surrogate || !loss_surrogate ||
      !out) {
    return invalid("null argument");
  }
  return guarded([&] {
    std::vector<surromix::scaling::LossPoint> orig(count_original);
    for (size_t i = 0; i < count_original; ++i) {
      orig[i] = {n_original[i], loss_original[i]};
    }
    std::vector<surromix::scaling::LossPoint> surr(count_surrogate);
    for (size_t i = 0; i < count_surrogate; ++i) {
      surr[i] = {n_surrogate[i], loss_surrogate[i]};
    }
    *out = new smx_model{surromix::scaling::build_model(orig, surr)};
  });
}

void smx_model_free(smx_model* model) { delete model; }

smx_status smx_model_predict(const smx_model* model, int64_t n, int64_t m,
                             double alpha, double* risk_out) {
  if (!model || !risk_out) return invalid("null argument");
  return guarded([&] {
    *risk_out = surromix::scaling::predict_mixture_risk(model->model, n, m,
                                                        alpha);
  });
}

smx_status smx_model_optimal_alpha(const smx_model* model, int64_t n,
                                   int64_t m, double* alpha_out,
                                   double* risk_out) {
  if (!model || !alpha_out || !risk_out) return invalid("null argument");
  return guarded([&] {
    const auto opt = surromix::scaling::optimal_alpha(model->model, n, m);
    *alpha_out = opt.alpha_star;
    *risk_out = opt.risk_star;
  });
}

smx_status smx_model_required_surrogate(const smx_model* model, int64_t n,
                                        double target_risk, int64_t* m_out,
                                        int* feasible_out) {
  if (!model || !m_out || !feasible_out) return invalid("null argument");
  return guarded([&] {
    const auto m =
        surromix::scaling::required_surrogate(model->model, n, target_risk);
    *feasible_out = m.has_value() ? 1 : 0;
    if (m) *m_out = *m;
  });
}

smx_status smx_model_to_json(const smx_model* model, char* buf, size_t cap,
                             size_t* needed) {
  if (!model || !needed) return invalid("null argument");
  std::string text;
  const smx_status st =
      guarded([&] { text = surromix::to_json(model->model).dump(2); });
  if (st != SMX_OK) return st;
  *needed = text.size() + 1;
  if (!buf || cap < *needed) {
    g_last_error = "buffer too small for model JSON";
    return SMX_ERR_BUFFER;
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return SMX_OK;
}

smx_status smx_mean_risk(int64_t d, int64_t n, int64_t m, double alpha,
                         double gap, double* risk_out) {
  if (!risk_out) return invalid("null argument");
  return guarded(
      [&] { *risk_out = surromix::oracles::mean_risk(d, n, m, alpha, gap); });
}

smx_status smx_mean_optimal_alpha(int64_t d, int64_t n, int64_t m, double gap,
                                  double* alpha_out, double* risk_out) {
  if (!alpha_out || !risk_out) return invalid("null argument");
  return guarded([&] {
    const auto opt = surromix::oracles::mean_optimal_alpha(d, n, m, gap);
    *alpha_out = opt.alpha_star;
    *risk_out = opt.risk_star;
  });
}

smx_status smx_naive_pooled_risk(int64_t d, int64_t n, int64_t m, double gap,
                                 double* risk_out) {
  if (!risk_out) return invalid("null argument");
  return guarded(
      [&] { *risk_out = surromix::oracles::naive_pooled_risk(d, n, m, gap); });
}

smx_status smx_hidim_risk(double delta, double delta_s, double r, double r_s,
                          double gamma, double sigma, double sigma_s,
                          double lambda, double alpha, double out[10]) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    surromix::HiDimSpec spec;
    spec.delta = delta;
    spec.delta_s = delta_s;
    spec.r = r;
    spec.r_s = r_s;
    spec.gamma = gamma;
    spec.sigma = sigma;
    spec.sigma_s = sigma_s;
    spec.lambda = lambda;
    const auto sol = surromix::oracles::hidim_asymptotic_risk(spec, alpha);
    out[0] = sol.xi;
    out[1] = sol.xi_perp;
    out[2] = sol.omega;
    out[3] = sol.rho_bar;
    out[4] = sol.t;
    out[5] = sol.rho;
    out[6] = sol.rho_s;
    out[7] = sol.tau;
    out[8] = sol.tau_s;
    out[9] = sol.risk;
  });
}

}  // extern "C"
