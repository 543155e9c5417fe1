#include "definetti/primal.hpp"

#include <cmath>
#include <string>

#include "definetti/dual.hpp"
#include "definetti/error.hpp"
#include "definetti/ruin.hpp"
#include "barrier_terms.hpp"

namespace definetti {

const char* to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::InactiveConstraint: return "InactiveConstraint";
    case CaseTag::ActiveConstraint: return "ActiveConstraint";
    case CaseTag::DoNothing: return "DoNothing";
    case CaseTag::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

double boundary_tolerance(const ModelParams& params) noexcept { return 1e-9 / params.delta(); }

void require_increasing_grid(std::span<const double> grid, const char* name) {
  if (grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " grid has a non-finite entry");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " grid is not increasing");
    }
  }
}

namespace {

// Lambda (psi_{b_Lambda}(x0) - psi_hat(x0)). Below the barrier e^{r2 b} is
// folded into the multiplier, so deep barriers do not underflow the gap.
double slack_product(const ModelParams& params, double m, double x0) {
  if (m == 0.0) return 0.0;
  const double b = barrier_from_lambda(params, m);
  if (x0 > b) return m * psi_gap(params, b, x0);
  const detail::BarrierTerms t(params);
  return std::exp(std::log(m) + t.r2 * b) * t.scaled_gap(b, x0);
}

PrimalOutcome solved(CaseTag tag, const ModelParams& params, double x0, double b, double k_t) {
  const double lambda_star = tag == CaseTag::ActiveConstraint ? lambda_from_barrier(params, b) : 0.0;
  const double slack = psi(params, b, x0) - k_t;
  return {tag, SaddlePoint{lambda_star, b, slack}, barrier_dividends(params, b, x0), false};
}

PrimalOutcome classify(const ModelParams& params, double x0, double k_t) {
  if (!(x0 >= 0.0) || !std::isfinite(x0)) {
    throw Error(ErrorCode::InvalidArgument, "initial surplus x0 must be finite and >= 0");
  }
  // Unconstrained optimum: barrier 0 when lambda_bar >= 0, else b0 with Lambda(b0) = 0.
  const double b0 = barrier_from_lambda(params, 0.0);
  if (psi(params, b0, x0) >= k_t) {
    return solved(CaseTag::InactiveConstraint, params, x0, b0, k_t);
  }

  const double excess = k_t - psi_hat(params, x0);
  if (std::abs(excess) <= boundary_tolerance(params)) {
    return {CaseTag::DoNothing, std::nullopt, 0.0, true};
  }
  if (excess > 0.0) {
    return {CaseTag::Infeasible, std::nullopt, NegativeInfinity{}, false};
  }
  try {
    return solved(CaseTag::ActiveConstraint, params, x0, barrier_for_target(params, x0, k_t), k_t);
  } catch (const Error& e) {
    // Only reachable when the ruin module's saturation band is wider than ours.
    if (e.code() == ErrorCode::TargetUnreachable) {
      return {CaseTag::DoNothing, std::nullopt, 0.0, true};
    }
    throw;
  }
}

}  // namespace

PrimalOutcome classify_and_solve(const ModelParams& params, double x0, double horizon) {
  return classify(params, x0, Constraint::from_horizon(params, horizon).discounted);
}

PrimalOutcome classify_discounted(const ModelParams& params, double x0, double discounted) {
  return classify(params, x0, Constraint::from_discounted(params, discounted).discounted);
}

std::vector<DualCurvePoint> dual_curve(const ModelParams& params, double x0, double horizon,
                                       std::span<const double> lambda_grid) {
  require_increasing_grid(lambda_grid, "multiplier");
  if (lambda_grid.front() < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "multipliers must be >= 0");
  }
  std::vector<DualCurvePoint> out;
  out.reserve(lambda_grid.size());
  for (double m : lambda_grid) {
    const DualSolution sol = DualSolution::solve(params, m, horizon);
    out.push_back({m, sol.barrier(), sol.value(x0)});
  }
  return out;
}

GapReport duality_gap_certificate(const ModelParams& params, double x0, double horizon,
                                  double search_tol) {
  const PrimalOutcome outcome = classify_and_solve(params, x0, horizon);
  if (!outcome.pair) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("duality gap needs an Inactive or Active instance, got ") +
                    to_string(outcome.tag));
  }

  int evaluations = 0;
  auto dual_value = [&](double m) {
    ++evaluations;
    return DualSolution::solve(params, m, horizon).value(x0);
  };

  // V_Lambda(x0) is convex in Lambda, so [0, hi] holds the minimizer once
  // V(hi) exceeds V(hi / 2).
  double hi = 1.0;
  double f_hi = dual_value(hi);
  double f_half = dual_value(0.5 * hi);
  for (int i = 0; f_hi <= f_half; ++i) {
    if (i == 200) {
      throw Error(ErrorCode::MinimizationFailure, "dual value never turned upward");
    }
    hi *= 2.0;
    f_half = f_hi;
    f_hi = dual_value(hi);
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = dual_value(c);
  double fd = dual_value(d);
  while (b - a > 1e-11 * (1.0 + hi)) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = dual_value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = dual_value(d);
    }
  }

  double argmin = c;
  double minimum = fc;
  for (double m : {a, d, b}) {
    const double f = dual_value(m);
    if (f < minimum) {
      minimum = f;
      argmin = m;
    }
  }
  const double primal = std::get<double>(outcome.value);
  return {minimum, argmin, primal, std::abs(minimum - primal), search_tol, evaluations};
}

std::vector<std::pair<double, double>> slack_limit_profile(const ModelParams& params, double x0,
                                                           std::span<const double> lambda_grid) {
  require_increasing_grid(lambda_grid, "multiplier");
  if (lambda_grid.front() < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "multipliers must be >= 0");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(lambda_grid.size());
  for (double m : lambda_grid) {
    out.emplace_back(m, slack_product(params, m, x0));
  }
  return out;
}

}  // namespace definetti
