#pragma once

#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "definetti/model.hpp"

namespace definetti {

enum class CaseTag { InactiveConstraint, ActiveConstraint, DoNothing, Infeasible };

const char* to_string(CaseTag tag) noexcept;

/// Value of an infeasible instance.
struct NegativeInfinity {
  friend bool operator==(NegativeInfinity, NegativeInfinity) = default;
};

using ExtendedValue = std::variant<double, NegativeInfinity>;

inline bool is_finite(const ExtendedValue& v) { return std::holds_alternative<double>(v); }

/// Complementary-slackness pair and the constraint slack psi_{b*}(x0) - K_T.
struct SaddlePoint {
  double lambda_star;
  double b_star;
  double slack;
};

struct PrimalOutcome {
  CaseTag tag;
  std::optional<SaddlePoint> pair;  ///< set for Inactive and Active
  ExtendedValue value;
  /// DoNothing: the value 0 is the limit of barrier strategies b -> infinity;
  /// the null strategy itself meets the constraint only in that limit.
  bool limit_strategy = false;
};

/// |K_T - psi_hat(x0)| at or below this is the boundary (DoNothing) case.
double boundary_tolerance(const ModelParams& params) noexcept;

/// Case analysis of the constrained problem for (x0, T).
PrimalOutcome classify_and_solve(const ModelParams& params, double x0, double horizon);

/// Same classification driven by the discounted horizon K directly.
PrimalOutcome classify_discounted(const ModelParams& params, double x0, double discounted);

struct DualCurvePoint {
  double multiplier;
  double barrier;
  double value;
};

/// V_Lambda(x0) along a nonempty, increasing grid of multipliers >= 0.
std::vector<DualCurvePoint> dual_curve(const ModelParams& params, double x0, double horizon,
                                       std::span<const double> lambda_grid);

struct GapReport {
  double dual_minimum;    ///< min over Lambda >= 0 of V_Lambda(x0), by golden-section search
  double argmin;          ///< minimizing multiplier
  double primal_value;    ///< dividends of the barrier b* from classify_and_solve
  double gap;             ///< |dual_minimum - primal_value|
  double tolerance;
  int evaluations;

  bool within_tolerance() const noexcept { return gap <= tolerance; }
};

/// Numerical no-duality-gap check. Requires an Inactive or Active instance
/// (Error(InvalidArgument) otherwise); Error(MinimizationFailure) when no
/// bracket around the minimum is found.
GapReport duality_gap_certificate(const ModelParams& params, double x0, double horizon,
                                  double search_tol = 1e-6);

/// Lambda * (psi_{b_Lambda}(x0) - psi_hat(x0)) for each multiplier of the grid:
/// the slack product at the feasibility boundary K_T = psi_hat(x0). Tends to 0.
std::vector<std::pair<double, double>> slack_limit_profile(const ModelParams& params, double x0,
                                                           std::span<const double> lambda_grid);

/// Throws Error(InvalidArgument) unless the grid is nonempty, finite, strictly increasing.
void require_increasing_grid(std::span<const double> grid, const char* name);

}  // namespace definetti
