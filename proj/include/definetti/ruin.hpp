#pragma once

#include "definetti/model.hpp"

namespace definetti {

// Discounted lifetime of a barrier strategy:
//   psi_b(x) = E_x[ int_0^{tau_b} e^{-delta s} ds ],
// extended by 0 below zero and by psi_b(b) above the barrier.

double psi(const ModelParams& params, double barrier, double x);

/// Limit of psi_b(x) as b -> infinity: 1/delta - (alpha + r2)/(alpha delta) e^{r2 x}.
double psi_hat(const ModelParams& params, double x);

/// psi_b(x) - psi_hat(x) without cancellation; always negative.
double psi_gap(const ModelParams& params, double barrier, double x);

/// Horizon H with K_H = psi_hat(x0): constraints with T > H are infeasible from x0.
double horizon_threshold(const ModelParams& params, double x0);

/// Surplus x at which psi_hat(x) = discounted; 0 when psi_hat(0) already exceeds it.
/// Requires 0 <= discounted < 1/delta.
double feasibility_threshold(const ModelParams& params, double discounted);

/// d psi_b(x) / db, strictly positive. For x >= b this is the derivative at x = b.
double dpsi_db(const ModelParams& params, double barrier, double x);

/// Unique barrier b with psi_b(x0) = target. Returns 0 when psi_0(x0) already
/// meets the target. Throws Error(TargetUnreachable) when target is within
/// 1e-9 of psi_hat(x0) or above it.
double barrier_for_target(const ModelParams& params, double x0, double target);

/// psi_b as an evaluable object: 1/delta + d1 e^{r1 x} + d2 e^{r2 x} on [0, b].
class RuinFunctional {
 public:
  RuinFunctional(const ModelParams& params, double barrier);

  double barrier() const noexcept { return barrier_; }
  double d1() const noexcept;
  double d2() const noexcept;

  double operator()(double x) const;
  /// Derivative in x; zero outside [0, b].
  double derivative(double x) const;
  /// c psi' + lambda int_0^x psi(x-y) alpha e^{-alpha y} dy - (lambda + delta) psi + 1,
  /// with the convolution by adaptive Simpson. Zero on [0, b] for the exact solution.
  double ide_residual(double x, double quad_tol = 1e-11) const;

 private:
  ModelParams params_;
  double barrier_;
  // d1 e^{r1 b} and d2 e^{r2 b}.
  double s1_;
  double s2_;
};

}  // namespace definetti
