#pragma once

#include "definetti/model.hpp"

namespace definetti {

// Penalized problem for a fixed Lagrange multiplier: maximize discounted
// dividends plus multiplier * discounted lifetime, minus multiplier * K_T.

/// Multiplier for which `barrier` is optimal, i.e. the barrier equation solved
/// for the multiplier. Strictly increasing; equals lambda_bar at b = 0.
double lambda_from_barrier(const ModelParams& params, double barrier);

/// Derivative of lambda_from_barrier; strictly positive.
double dlambda_db(const ModelParams& params, double barrier);

/// Optimal barrier for a multiplier >= 0. Returns 0 when multiplier <= lambda_bar.
double barrier_from_lambda(const ModelParams& params, double multiplier);

/// Expected discounted dividends of the barrier strategy at level `barrier`
/// started from x (no multiplier, no constraint).
double barrier_dividends(const ModelParams& params, double barrier, double x);

enum class Regime { BarrierZero, PositiveBarrier };

class DualSolution {
 public:
  /// Throws Error(InvalidArgument) for a negative multiplier or horizon.
  static DualSolution solve(const ModelParams& params, double multiplier, double horizon);

  const ModelParams& params() const noexcept { return params_; }
  double multiplier() const noexcept { return multiplier_; }
  double horizon() const noexcept { return horizon_; }
  Regime regime() const noexcept { return regime_; }
  double barrier() const noexcept { return barrier_; }

  /// Coefficients of e^{r1 x} and e^{r2 x} on [0, b]. Zero in the barrier-zero regime.
  double c1() const noexcept;
  double c2() const noexcept;

  /// Value function including the -multiplier * K_T term. Throws NegativeState for x < 0.
  double value(double x) const;
  /// First derivative in x.
  double derivative(double x) const;
  /// value(x) + multiplier * K_T: the quantity the HJB equation is written for.
  double penalized_value(double x) const;

  /// Closed-form convolution int_0^x W(x-y) alpha e^{-alpha y} dy for W = penalized_value.
  double claim_convolution(double x) const;

 private:
  DualSolution(const ModelParams& params, double multiplier, double horizon);

  ModelParams params_;
  double multiplier_;
  double horizon_;
  Regime regime_;
  double barrier_ = 0.0;
  // C1 e^{r1 b} and C2 e^{r2 b}; the curved branch is s1 e^{r1(x-b)} + s2 e^{r2(x-b)}.
  double s1_ = 0.0;
  double s2_ = 0.0;
  double penalty_offset_ = 0.0;  // (multiplier / delta) e^{-delta T}
  double level_ = 0.0;           // value at the barrier
};

inline DualSolution solve_dual(const ModelParams& params, double multiplier, double horizon) {
  return DualSolution::solve(params, multiplier, horizon);
}

inline double eval_dual_value(const DualSolution& sol, double x) { return sol.value(x); }

/// The two terms of the HJB variational inequality at x:
/// generator = multiplier + c W' + lambda int W(x-y) dG(y) - (lambda+delta) W, and
/// gradient = 1 - W'. A solution has max(generator, gradient) == 0.
struct HjbResidual {
  double generator;
  double gradient;

  double max_term() const noexcept { return generator > gradient ? generator : gradient; }
};

/// Convolution by adaptive Simpson to absolute tolerance quad_tol.
/// Throws NegativeState for x < 0 and QuadratureFailure when the tolerance is not met.
HjbResidual hjb_residual(const DualSolution& sol, double x, double quad_tol = 1e-10);

/// Same residual with the convolution integrated in closed form.
HjbResidual hjb_residual_closed_form(const DualSolution& sol, double x);

}  // namespace definetti
