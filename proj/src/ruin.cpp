#include "definetti/ruin.hpp"

#include <algorithm>
#include <cmath>

#include "barrier_terms.hpp"
#include "definetti/error.hpp"
#include "definetti/quadrature.hpp"
#include "definetti/rootfind.hpp"

namespace definetti {

namespace {

void require_barrier(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "barrier must be finite and >= 0");
  }
}

void require_state(double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::NegativeState, "surplus must be >= 0");
}

// Gap psi_b(x) - psi_hat(x) for 0 <= x <= b.
double gap_below_barrier(const detail::BarrierTerms& t, double b, double x) {
  return std::exp(t.r2 * b) * t.scaled_gap(b, x);
}

}  // namespace

RuinFunctional::RuinFunctional(const ModelParams& params, double barrier)
    : params_(params), barrier_(barrier) {
  require_barrier(barrier);
  const detail::BarrierTerms t(params);
  const double den = t.alpha * t.delta * t.scaled_denominator(barrier);
  const double e2 = std::exp(t.r2 * barrier);
  s1_ = t.a1 * t.a2 * t.r2 * e2 / den;
  s2_ = -t.a1 * t.a2 * t.r1 * e2 / den;
}

double RuinFunctional::d1() const noexcept { return s1_ * std::exp(-params_.r1() * barrier_); }
double RuinFunctional::d2() const noexcept { return s2_ * std::exp(-params_.r2() * barrier_); }

double RuinFunctional::operator()(double x) const {
  if (x < 0.0) return 0.0;
  const double d = std::min(x, barrier_) - barrier_;
  return 1.0 / params_.delta() + s1_ * std::exp(params_.r1() * d) +
         s2_ * std::exp(params_.r2() * d);
}

double RuinFunctional::derivative(double x) const {
  if (x < 0.0 || x > barrier_) return 0.0;
  const double d = x - barrier_;
  return s1_ * params_.r1() * std::exp(params_.r1() * d) +
         s2_ * params_.r2() * std::exp(params_.r2() * d);
}

double RuinFunctional::ide_residual(double x, double quad_tol) const {
  require_state(x);
  const double alpha = params_.alpha();
  auto integrand = [this, x, alpha](double y) { return (*this)(x - y) * alpha * std::exp(-alpha * y); };
  const double convolution = adaptive_simpson(integrand, 0.0, x, quad_tol);
  return params_.c() * derivative(x) + params_.lambda() * convolution -
         (params_.lambda() + params_.delta()) * (*this)(x) + 1.0;
}

double psi(const ModelParams& params, double barrier, double x) {
  require_barrier(barrier);
  return RuinFunctional(params, barrier)(x);
}

double psi_hat(const ModelParams& params, double x) {
  require_state(x);
  const double a2 = params.alpha() + params.r2();
  return 1.0 / params.delta() - a2 / (params.alpha() * params.delta()) * std::exp(params.r2() * x);
}

double psi_gap(const ModelParams& params, double barrier, double x) {
  require_barrier(barrier);
  require_state(x);
  const detail::BarrierTerms t(params);
  if (x <= barrier) return gap_below_barrier(t, barrier, x);
  // Constant extension above the barrier while psi_hat keeps rising.
  return gap_below_barrier(t, barrier, barrier) +
         t.a2 / (t.alpha * t.delta) * (std::exp(t.r2 * x) - std::exp(t.r2 * barrier));
}

double horizon_threshold(const ModelParams& params, double x0) {
  require_state(x0);
  const double a2 = params.alpha() + params.r2();
  return -(std::log(a2 / params.alpha()) + params.r2() * x0) / params.delta();
}

double feasibility_threshold(const ModelParams& params, double discounted) {
  const double delta = params.delta();
  if (!(discounted >= 0.0) || !(discounted * delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "discounted horizon K must lie in [0, 1/delta)");
  }
  // psi_hat(x) = K  <=>  e^{r2 x} = alpha (1 - delta K) / (alpha + r2)
  const double a2 = params.alpha() + params.r2();
  const double x = std::log(params.alpha() * (1.0 - delta * discounted) / a2) / params.r2();
  return std::max(x, 0.0);
}

double dpsi_db(const ModelParams& params, double barrier, double x) {
  require_barrier(barrier);
  require_state(x);
  const detail::BarrierTerms t(params);
  const double b = barrier;
  const double xe = std::min(x, b);
  const double den = t.scaled_denominator(b);
  // e^{(r1+r2) b} [a2 e^{r2 x} - a1 e^{r1 x}] / D(b)^2 with D(b) = e^{r1 b} den.
  const double bracket =
      t.a2 * std::exp((t.r2 - t.r1) * b + t.r2 * xe) - t.a1 * std::exp(t.r2 * b + t.r1 * (xe - b));
  return t.a1 * t.a2 / (t.alpha * t.delta) * t.r1 * t.r2 * (t.r1 - t.r2) * bracket / (den * den);
}

double barrier_for_target(const ModelParams& params, double x0, double target) {
  require_state(x0);
  const double delta = params.delta();
  if (!(target >= 0.0) || !(target * delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "target must lie in [0, 1/delta)");
  }
  const double limit = psi_hat(params, x0);
  if (target >= limit - 1e-9) {
    throw Error(ErrorCode::TargetUnreachable,
                "target is not below the b -> infinity limit psi_hat(x0)");
  }
  if (target <= psi(params, 0.0, x0)) return 0.0;

  const double shortfall = limit - target;
  const ScalarFunction residual = [&params, x0, shortfall](double b) {
    return psi_gap(params, b, x0) + shortfall;
  };

  // Beyond b_cap the gap is below 1e-13, i.e. psi_b(x0) is saturated.
  const detail::BarrierTerms t(params);
  const double amplitude = t.a2 * -t.r2 * (t.a1 * std::exp(t.r1 * x0) - t.a2 * std::exp(t.r2 * x0)) /
                           (t.alpha * t.delta * t.r1 * t.a1);
  const double b_cap = std::max(x0, std::log(1e-13 / amplitude) / (t.r2 - t.r1)) + 1.0;

  double lo = 1e-8;
  if (residual(lo) >= 0.0) lo = 0.0;
  try {
    const Bracket bracket = expand_bracket(residual, lo, +1, 2.0, b_cap);
    return solve_bracketed(residual, bracket).root;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoRootInRange) {
      throw Error(ErrorCode::TargetUnreachable, "psi_b(x0) saturates before reaching the target");
    }
    throw;
  }
}

}  // namespace definetti
