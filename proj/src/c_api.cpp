#include "definetti/definetti.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "definetti/dual.hpp"
#include "definetti/error.hpp"
#include "definetti/model.hpp"
#include "definetti/primal.hpp"
#include "definetti/ruin.hpp"
#include "definetti/sim.hpp"

struct dfn_model {
  definetti::ModelParams params;
};

struct dfn_dual {
  definetti::DualSolution solution;
};

namespace {

thread_local std::string last_error;

dfn_status status_of(definetti::ErrorCode code) {
  using definetti::ErrorCode;
  switch (code) {
    case ErrorCode::NonPositiveParameter: return DFN_ERR_NON_POSITIVE_PARAMETER;
    case ErrorCode::InvalidArgument: return DFN_ERR_INVALID_ARGUMENT;
    case ErrorCode::NoSignChange: return DFN_ERR_NO_SIGN_CHANGE;
    case ErrorCode::MaxIterExceeded: return DFN_ERR_MAX_ITER_EXCEEDED;
    case ErrorCode::NoRootInRange: return DFN_ERR_NO_ROOT_IN_RANGE;
    case ErrorCode::TargetUnreachable: return DFN_ERR_TARGET_UNREACHABLE;
    case ErrorCode::NegativeState: return DFN_ERR_NEGATIVE_STATE;
    case ErrorCode::QuadratureFailure: return DFN_ERR_QUADRATURE_FAILURE;
    case ErrorCode::MinimizationFailure: return DFN_ERR_MINIMIZATION_FAILURE;
    case ErrorCode::InvalidConfig: return DFN_ERR_INVALID_CONFIG;
  }
  return DFN_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes at the boundary.
template <class F>
dfn_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return DFN_OK;
  } catch (const definetti::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DFN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DFN_ERR_INTERNAL;
  }
}

dfn_status null_pointer() {
  last_error = "null pointer argument";
  return DFN_ERR_NULL_POINTER;
}

template <class... P>
bool any_null(const P*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

definetti::SimConfig to_cpp(const dfn_sim_config& c) {
  return {c.n_paths, c.seed, c.t_max, c.barrier, c.x0, c.threads};
}

void fill(const definetti::PrimalOutcome& o, dfn_outcome* out) {
  *out = dfn_outcome{};
  out->case_tag = static_cast<dfn_case>(o.tag);
  out->has_pair = o.pair.has_value();
  if (o.pair) {
    out->lambda_star = o.pair->lambda_star;
    out->b_star = o.pair->b_star;
    out->slack = o.pair->slack;
  }
  out->value_is_neg_inf = !definetti::is_finite(o.value);
  out->value = out->value_is_neg_inf ? 0.0 : std::get<double>(o.value);
  out->limit_strategy = o.limit_strategy;
}

}  // namespace

extern "C" {

uint32_t dfn_abi_version(void) { return DFN_ABI_VERSION; }

const char* dfn_status_string(dfn_status status) {
  switch (status) {
    case DFN_OK: return "OK";
    case DFN_ERR_NULL_POINTER: return "NullPointer";
    case DFN_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status >= DFN_ERR_NON_POSITIVE_PARAMETER && status <= DFN_ERR_INVALID_CONFIG) {
    return definetti::to_string(static_cast<definetti::ErrorCode>(status));
  }
  return "Unknown";
}

const char* dfn_last_error(void) { return last_error.c_str(); }

dfn_status dfn_model_create(double lambda, double c, double alpha, double delta, dfn_model** out) {
  if (out == nullptr) return null_pointer();
  *out = nullptr;
  return guarded([&] {
    *out = new dfn_model{definetti::ModelParams::create(lambda, c, alpha, delta)};
  });
}

void dfn_model_destroy(dfn_model* model) { delete model; }

dfn_status dfn_model_roots(const dfn_model* model, double* r1, double* r2) {
  if (any_null(model, r1, r2)) return null_pointer();
  *r1 = model->params.r1();
  *r2 = model->params.r2();
  return DFN_OK;
}

dfn_status dfn_model_lambda_bar(const dfn_model* model, double* out) {
  if (any_null(model, out)) return null_pointer();
  *out = model->params.lambda_bar();
  return DFN_OK;
}

dfn_status dfn_model_net_profit(const dfn_model* model, int* out) {
  if (any_null(model, out)) return null_pointer();
  *out = model->params.net_profit() ? 1 : 0;
  return DFN_OK;
}

dfn_status dfn_discounted_horizon(const dfn_model* model, double horizon, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] {
    *out = definetti::Constraint::from_horizon(model->params, horizon).discounted;
  });
}

dfn_status dfn_horizon_from_discounted(const dfn_model* model, double discounted, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] {
    *out = definetti::Constraint::from_discounted(model->params, discounted).horizon;
  });
}

dfn_status dfn_lambda_from_barrier(const dfn_model* model, double barrier, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::lambda_from_barrier(model->params, barrier); });
}

dfn_status dfn_dlambda_db(const dfn_model* model, double barrier, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::dlambda_db(model->params, barrier); });
}

dfn_status dfn_barrier_from_lambda(const dfn_model* model, double multiplier, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::barrier_from_lambda(model->params, multiplier); });
}

dfn_status dfn_barrier_dividends(const dfn_model* model, double barrier, double x, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::barrier_dividends(model->params, barrier, x); });
}

dfn_status dfn_dual_solve(const dfn_model* model, double multiplier, double horizon,
                          dfn_dual** out) {
  if (any_null(model, out)) return null_pointer();
  *out = nullptr;
  return guarded([&] {
    *out = new dfn_dual{definetti::DualSolution::solve(model->params, multiplier, horizon)};
  });
}

void dfn_dual_destroy(dfn_dual* dual) { delete dual; }

dfn_status dfn_dual_get_info(const dfn_dual* dual, dfn_dual_info* out) {
  if (any_null(dual, out)) return null_pointer();
  const definetti::DualSolution& s = dual->solution;
  *out = dfn_dual_info{s.multiplier(),
                       s.horizon(),
                       s.regime() == definetti::Regime::BarrierZero ? DFN_REGIME_BARRIER_ZERO
                                                                    : DFN_REGIME_POSITIVE_BARRIER,
                       s.barrier(),
                       s.c1(),
                       s.c2()};
  return DFN_OK;
}

dfn_status dfn_dual_value(const dfn_dual* dual, double x, double* out) {
  if (any_null(dual, out)) return null_pointer();
  return guarded([&] { *out = dual->solution.value(x); });
}

dfn_status dfn_dual_hjb_residual(const dfn_dual* dual, double x, double quad_tol,
                                 double* generator, double* gradient) {
  if (any_null(dual, generator, gradient)) return null_pointer();
  return guarded([&] {
    const definetti::HjbResidual r = definetti::hjb_residual(dual->solution, x, quad_tol);
    *generator = r.generator;
    *gradient = r.gradient;
  });
}

dfn_status dfn_psi(const dfn_model* model, double barrier, double x, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::psi(model->params, barrier, x); });
}

dfn_status dfn_psi_hat(const dfn_model* model, double x, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::psi_hat(model->params, x); });
}

dfn_status dfn_dpsi_db(const dfn_model* model, double barrier, double x, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::dpsi_db(model->params, barrier, x); });
}

dfn_status dfn_horizon_threshold(const dfn_model* model, double x0, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::horizon_threshold(model->params, x0); });
}

dfn_status dfn_feasibility_threshold(const dfn_model* model, double discounted, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::feasibility_threshold(model->params, discounted); });
}

dfn_status dfn_barrier_for_target(const dfn_model* model, double x0, double target, double* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { *out = definetti::barrier_for_target(model->params, x0, target); });
}

const char* dfn_case_string(dfn_case c) {
  if (c < DFN_CASE_INACTIVE || c > DFN_CASE_INFEASIBLE) return "Unknown";
  return definetti::to_string(static_cast<definetti::CaseTag>(c));
}

dfn_status dfn_solve(const dfn_model* model, double x0, double horizon, dfn_outcome* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { fill(definetti::classify_and_solve(model->params, x0, horizon), out); });
}

dfn_status dfn_solve_discounted(const dfn_model* model, double x0, double discounted,
                                dfn_outcome* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] { fill(definetti::classify_discounted(model->params, x0, discounted), out); });
}

dfn_status dfn_boundary_tolerance(const dfn_model* model, double* out) {
  if (any_null(model, out)) return null_pointer();
  *out = definetti::boundary_tolerance(model->params);
  return DFN_OK;
}

dfn_status dfn_duality_gap(const dfn_model* model, double x0, double horizon, double search_tol,
                           dfn_gap_report* out) {
  if (any_null(model, out)) return null_pointer();
  return guarded([&] {
    const definetti::GapReport r =
        definetti::duality_gap_certificate(model->params, x0, horizon, search_tol);
    *out = dfn_gap_report{r.dual_minimum, r.argmin,          r.primal_value, r.gap,
                          r.tolerance,    r.within_tolerance(), r.evaluations};
  });
}

dfn_status dfn_dual_curve(const dfn_model* model, double x0, double horizon,
                          const double* lambda_grid, size_t n, double* barriers, double* values) {
  if (any_null(model, lambda_grid, barriers, values)) return null_pointer();
  return guarded([&] {
    const auto curve = definetti::dual_curve(model->params, x0, horizon, {lambda_grid, n});
    for (size_t i = 0; i < n; ++i) {
      barriers[i] = curve[i].barrier;
      values[i] = curve[i].value;
    }
  });
}

dfn_status dfn_slack_limit_profile(const dfn_model* model, double x0, const double* lambda_grid,
                                   size_t n, double* products) {
  if (any_null(model, lambda_grid, products)) return null_pointer();
  return guarded([&] {
    const auto profile = definetti::slack_limit_profile(model->params, x0, {lambda_grid, n});
    for (size_t i = 0; i < n; ++i) products[i] = profile[i].second;
  });
}

dfn_status dfn_sim_config_default(const dfn_model* model, double barrier, double x0,
                                  dfn_sim_config* out) {
  if (any_null(model, out)) return null_pointer();
  *out = dfn_sim_config{100000, 0, definetti::default_t_max(model->params), barrier, x0, 0};
  return DFN_OK;
}

dfn_status dfn_simulate(const dfn_model* model, const dfn_sim_config* config,
                        dfn_sim_estimate* out) {
  if (any_null(model, config, out)) return null_pointer();
  return guarded([&] {
    const definetti::SimEstimate e = definetti::simulate(model->params, to_cpp(*config));
    *out = dfn_sim_estimate{e.mean_dividends, e.se_dividends,     e.mean_psi, e.se_psi,
                            e.truncation_bound, e.n_ruined, e.n_paths};
  });
}

dfn_status dfn_estimate_constraint_slack(const dfn_model* model, const dfn_sim_config* config,
                                         double horizon, dfn_slack_estimate* out) {
  if (any_null(model, config, out)) return null_pointer();
  return guarded([&] {
    const definetti::SlackEstimate s =
        definetti::estimate_constraint_slack(model->params, to_cpp(*config), horizon);
    *out = dfn_slack_estimate{s.mean, s.se, s.ci_low, s.ci_high, s.confidence};
  });
}

}  // extern "C"
