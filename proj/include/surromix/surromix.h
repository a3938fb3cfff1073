#ifndef SURROMIX_H
#define SURROMIX_H

/*
 * C API of the surromix shared library.
 *
 * Conventions:
 *   - Every fallible call returns an smx_status; outputs go through
 *     pointers. SMX_OK is 0.
 *   - smx_last_error() describes the most recent failure on the calling
 *     thread.
 *   - Structured state lives behind opaque handles (smx_model) with
 *     explicit _free functions. Handles are immutable after creation and
 *     may be shared across threads.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smx_status {
  SMX_OK = 0,
  SMX_ERR_INVALID = 1, /* bad arguments, malformed input files */
  SMX_ERR_NUMERIC = 2, /* solver failure, non-convergence */
  SMX_ERR_IO = 3,      /* missing or unwritable files */
  SMX_ERR_BUFFER = 4,  /* caller buffer too small */
} smx_status;

const char* smx_version(void);

/* Message for the last failure on this thread; empty string if none. */
const char* smx_last_error(void);

/* ---- file-in/file-out workflows (the CLI surface) ---------------------- */

/* Runs an experiment plan JSON and writes the results CSV
 * (header n,m,alpha,risk_mean,risk_se,replicates). seed_override may be
 * NULL to use the plan's seed. threads <= 0 means all cores; output bytes
 * do not depend on the thread count. */
smx_status smx_simulate_file(const char* plan_json_path,
                             const char* out_csv_path,
                             const uint64_t* seed_override, int threads);

/* Fits per-source power laws from two loss tables (header n,loss) and
 * writes the scaling-law model JSON. */
smx_status smx_fit_file(const char* original_csv_path,
                        const char* surrogate_csv_path,
                        const char* out_json_path);

/* Predicted risk over an alpha grid ("start:stop:count" or a comma list);
 * writes alpha,predicted_risk rows plus an optimum comment line. */
smx_status smx_predict_file(const char* model_json_path, int64_t n, int64_t m,
                            const char* alpha_grid_spec,
                            const char* out_csv_path);

/* Surrogate planning. Writes either
 *   "m=<v> alpha=<v> predicted_risk=<v>"  or  "infeasible"
 * into line_out (NUL-terminated). */
smx_status smx_plan_file(const char* model_json_path, int64_t n,
                         double target_risk, char* line_out, size_t line_cap);

/* Analytic risk curve for setting in {mean, sequence, nonparam, lowdim,
 * hidim}; parameters come from a JSON file, output is alpha,risk rows with
 * an argmin comment line. threads <= 0 means all cores; the output does
 * not depend on it. */
smx_status smx_oracle_file(const char* setting, const char* params_json_path,
                           const char* out_csv_path, int threads);

/* ---- scaling-law model handle ------------------------------------------ */

typedef struct smx_model smx_model;

smx_status smx_model_from_json_file(const char* path, smx_model** out);

/* Builds a model from raw loss points (n[i], loss[i]) for each source. */
smx_status smx_model_fit(const int64_t* n_original, const double* loss_original,
                         size_t count_original, const int64_t* n_surrogate,
                         const double* loss_surrogate, size_t count_surrogate,
                         smx_model** out);

void smx_model_free(smx_model* model);

smx_status smx_model_predict(const smx_model* model, int64_t n, int64_t m,
                             double alpha, double* risk_out);

smx_status smx_model_optimal_alpha(const smx_model* model, int64_t n,
                                   int64_t m, double* alpha_out,
                                   double* risk_out);

/* *feasible_out is 0 when even m = 1e12 cannot reach the target (m_out is
 * untouched then). */
smx_status smx_model_required_surrogate(const smx_model* model, int64_t n,
                                        double target_risk, int64_t* m_out,
                                        int* feasible_out);

/* Serializes the model; *needed receives the full length including the
 * terminating NUL. Returns SMX_ERR_BUFFER when cap is too small (buf may be
 * NULL with cap 0 to query the size). */
smx_status smx_model_to_json(const smx_model* model, char* buf, size_t cap,
                             size_t* needed);

/* ---- scalar oracles ----------------------------------------------------- */

smx_status smx_mean_risk(int64_t d, int64_t n, int64_t m, double alpha,
                         double gap, double* risk_out);

smx_status smx_mean_optimal_alpha(int64_t d, int64_t n, int64_t m, double gap,
                                  double* alpha_out, double* risk_out);

smx_status smx_naive_pooled_risk(int64_t d, int64_t n, int64_t m, double gap,
                                 double* risk_out);

/* Asymptotic excess risk of weighted ridge in the proportional regime.
 * Inputs describe the problem (aspect ratios, signal lengths and angle,
 * noise levels, penalty); out[] receives
 *   { xi, xi_perp, omega, rho_bar, t, rho, rho_s, tau, tau_s, risk }. */
smx_status smx_hidim_risk(double delta, double delta_s, double r, double r_s,
                          double gamma, double sigma, double sigma_s,
                          double lambda, double alpha, double out[10]);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SURROMIX_H */
