/* C interface to the constrained de Finetti dividend solver.
 *
 * Every function returns a dfn_status; outputs go through pointer arguments.
 * On failure dfn_last_error() holds a message for the calling thread.
 * Handles are opaque and immutable after creation, so they can be shared
 * across threads.
 */
#ifndef DEFINETTI_DEFINETTI_H
#define DEFINETTI_DEFINETTI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DEFINETTI_BUILDING)
#define DFN_API __declspec(dllexport)
#else
#define DFN_API __declspec(dllimport)
#endif
#else
#define DFN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define DFN_ABI_VERSION 1u

typedef enum dfn_status {
  DFN_OK = 0,
  DFN_ERR_NON_POSITIVE_PARAMETER = 1,
  DFN_ERR_INVALID_ARGUMENT = 2,
  DFN_ERR_NO_SIGN_CHANGE = 3,
  DFN_ERR_MAX_ITER_EXCEEDED = 4,
  DFN_ERR_NO_ROOT_IN_RANGE = 5,
  DFN_ERR_TARGET_UNREACHABLE = 6,
  DFN_ERR_NEGATIVE_STATE = 7,
  DFN_ERR_QUADRATURE_FAILURE = 8,
  DFN_ERR_MINIMIZATION_FAILURE = 9,
  DFN_ERR_INVALID_CONFIG = 10,
  DFN_ERR_NULL_POINTER = 11,
  DFN_ERR_INTERNAL = 12
} dfn_status;

typedef enum dfn_case {
  DFN_CASE_INACTIVE = 0,
  DFN_CASE_ACTIVE = 1,
  DFN_CASE_DO_NOTHING = 2,
  DFN_CASE_INFEASIBLE = 3
} dfn_case;

typedef enum dfn_regime { DFN_REGIME_BARRIER_ZERO = 0, DFN_REGIME_POSITIVE_BARRIER = 1 } dfn_regime;

typedef struct dfn_model dfn_model;
typedef struct dfn_dual dfn_dual;

DFN_API uint32_t dfn_abi_version(void);
DFN_API const char* dfn_status_string(dfn_status status);
/* Message of the last failed call on this thread; empty string if none. */
DFN_API const char* dfn_last_error(void);

/* ---- model ---- */

DFN_API dfn_status dfn_model_create(double lambda, double c, double alpha, double delta,
                                    dfn_model** out);
DFN_API void dfn_model_destroy(dfn_model* model);
DFN_API dfn_status dfn_model_roots(const dfn_model* model, double* r1, double* r2);
DFN_API dfn_status dfn_model_lambda_bar(const dfn_model* model, double* out);
/* 1 when c > lambda / alpha. */
DFN_API dfn_status dfn_model_net_profit(const dfn_model* model, int* out);
DFN_API dfn_status dfn_discounted_horizon(const dfn_model* model, double horizon, double* out);
DFN_API dfn_status dfn_horizon_from_discounted(const dfn_model* model, double discounted,
                                               double* out);

/* ---- dual (fixed multiplier) ---- */

DFN_API dfn_status dfn_lambda_from_barrier(const dfn_model* model, double barrier, double* out);
DFN_API dfn_status dfn_dlambda_db(const dfn_model* model, double barrier, double* out);
DFN_API dfn_status dfn_barrier_from_lambda(const dfn_model* model, double multiplier, double* out);
DFN_API dfn_status dfn_barrier_dividends(const dfn_model* model, double barrier, double x,
                                         double* out);

typedef struct dfn_dual_info {
  double multiplier;
  double horizon;
  dfn_regime regime;
  double barrier;
  double c1;
  double c2;
} dfn_dual_info;

DFN_API dfn_status dfn_dual_solve(const dfn_model* model, double multiplier, double horizon,
                                  dfn_dual** out);
DFN_API void dfn_dual_destroy(dfn_dual* dual);
DFN_API dfn_status dfn_dual_get_info(const dfn_dual* dual, dfn_dual_info* out);
DFN_API dfn_status dfn_dual_value(const dfn_dual* dual, double x, double* out);
/* generator and 1 - V'(x); the convolution uses adaptive quadrature to quad_tol. */
DFN_API dfn_status dfn_dual_hjb_residual(const dfn_dual* dual, double x, double quad_tol,
                                         double* generator, double* gradient);

/* ---- discounted lifetime ---- */

DFN_API dfn_status dfn_psi(const dfn_model* model, double barrier, double x, double* out);
DFN_API dfn_status dfn_psi_hat(const dfn_model* model, double x, double* out);
DFN_API dfn_status dfn_dpsi_db(const dfn_model* model, double barrier, double x, double* out);
DFN_API dfn_status dfn_horizon_threshold(const dfn_model* model, double x0, double* out);
DFN_API dfn_status dfn_feasibility_threshold(const dfn_model* model, double discounted,
                                             double* out);
DFN_API dfn_status dfn_barrier_for_target(const dfn_model* model, double x0, double target,
                                          double* out);

/* ---- constrained problem ---- */

typedef struct dfn_outcome {
  dfn_case case_tag;
  int has_pair;         /* lambda_star, b_star, slack valid */
  double lambda_star;
  double b_star;
  double slack;
  int value_is_neg_inf; /* value is meaningless when set */
  double value;
  int limit_strategy;   /* DoNothing: value attained only in the limit b -> infinity */
} dfn_outcome;

DFN_API const char* dfn_case_string(dfn_case c);
DFN_API dfn_status dfn_solve(const dfn_model* model, double x0, double horizon, dfn_outcome* out);
DFN_API dfn_status dfn_solve_discounted(const dfn_model* model, double x0, double discounted,
                                        dfn_outcome* out);
DFN_API dfn_status dfn_boundary_tolerance(const dfn_model* model, double* out);

typedef struct dfn_gap_report {
  double dual_minimum;
  double argmin;
  double primal_value;
  double gap;
  double tolerance;
  int within_tolerance;
  int evaluations;
} dfn_gap_report;

DFN_API dfn_status dfn_duality_gap(const dfn_model* model, double x0, double horizon,
                                   double search_tol, dfn_gap_report* out);

/* Grids must be nonempty and strictly increasing; outputs hold n entries. */
DFN_API dfn_status dfn_dual_curve(const dfn_model* model, double x0, double horizon,
                                  const double* lambda_grid, size_t n, double* barriers,
                                  double* values);
DFN_API dfn_status dfn_slack_limit_profile(const dfn_model* model, double x0,
                                           const double* lambda_grid, size_t n, double* products);

/* ---- simulation ---- */

typedef struct dfn_sim_config {
  uint64_t n_paths;
  uint64_t seed;
  double t_max;
  double barrier;
  double x0;
  unsigned threads;
} dfn_sim_config;

typedef struct dfn_sim_estimate {
  double mean_dividends;
  double se_dividends;
  double mean_psi;
  double se_psi;
  double truncation_bound;
  uint64_t n_ruined;
  uint64_t n_paths;
} dfn_sim_estimate;

typedef struct dfn_slack_estimate {
  double mean;
  double se;
  double ci_low;
  double ci_high;
  double confidence;
} dfn_slack_estimate;

/* Fills defaults: 1e5 paths, seed 0, t_max = 40 / delta, all threads. */
DFN_API dfn_status dfn_sim_config_default(const dfn_model* model, double barrier, double x0,
                                          dfn_sim_config* out);
DFN_API dfn_status dfn_simulate(const dfn_model* model, const dfn_sim_config* config,
                                dfn_sim_estimate* out);
DFN_API dfn_status dfn_estimate_constraint_slack(const dfn_model* model,
                                                 const dfn_sim_config* config, double horizon,
                                                 dfn_slack_estimate* out);

#ifdef __cplusplus
}
#endif

#endif /* DEFINETTI_DEFINETTI_H */
