#include "definetti/dual.hpp"

#include <algorithm>
#include <cmath>

#include "barrier_terms.hpp"
#include "definetti/error.hpp"
#include "definetti/quadrature.hpp"
#include "definetti/rootfind.hpp"

namespace definetti {

namespace {

// Largest exponent we evaluate directly before switching to log-space.
constexpr double kMaxExponent = 700.0;

struct BarrierEquation {
  double r1, r2;
  double p1;           // r1 (lambda + delta) + alpha delta
  double p2;           // r2 (lambda + delta) + alpha delta
  double denominator;  // (r2 - r1)(alpha + r1)(alpha + r2), negative

  explicit BarrierEquation(const ModelParams& p)
      : r1(p.r1()), r2(p.r2()),
        p1(p.r1() * (p.lambda() + p.delta()) + p.alpha() * p.delta()),
        p2(p.r2() * (p.lambda() + p.delta()) + p.alpha() * p.delta()),
        denominator((p.r2() - p.r1()) * (p.alpha() + p.r1()) * (p.alpha() + p.r2())) {}

  // e^{r2 b} * Lambda(b); bounded for every b >= 0.
  double scaled_multiplier(double b) const {
    return (-r1 * p1 + r2 * p2 * std::exp((r2 - r1) * b)) / denominator;
  }
};

void require_barrier(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument, "barrier must be finite and >= 0");
  }
}

void require_state(double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::NegativeState, "surplus must be >= 0");
}

}  // namespace

double lambda_from_barrier(const ModelParams& params, double b) {
  require_barrier(b);
  const BarrierEquation eq(params);
  if (-eq.r2 * b <= kMaxExponent) {
    return (-eq.r1 * std::exp(-eq.r2 * b) * eq.p1 + eq.r2 * std::exp(-eq.r1 * b) * eq.p2) /
           eq.denominator;
  }
  // Deep barrier: the scaled multiplier is positive here.
  return std::exp(-eq.r2 * b + std::log(eq.scaled_multiplier(b)));
}

double dlambda_db(const ModelParams& params, double b) {
  require_barrier(b);
  const BarrierEquation eq(params);
  const double k = eq.r1 * eq.r2 / eq.denominator;
  if (-eq.r2 * b <= kMaxExponent) {
    return k * (std::exp(-eq.r2 * b) * eq.p1 - std::exp(-eq.r1 * b) * eq.p2);
  }
  return std::exp(-eq.r2 * b + std::log(k * (eq.p1 - std::exp((eq.r2 - eq.r1) * b) * eq.p2)));
}

double barrier_from_lambda(const ModelParams& params, double multiplier) {
  if (!(multiplier >= 0.0) || !std::isfinite(multiplier)) {
    throw Error(ErrorCode::InvalidArgument, "multiplier must be finite and >= 0");
  }
  if (multiplier <= params.lambda_bar()) return 0.0;

  const BarrierEquation eq(params);
  // Sign of Lambda(b) - multiplier, multiplied through by e^{r2 b} > 0.
  const ScalarFunction residual = [&eq, multiplier](double b) {
    return eq.scaled_multiplier(b) - multiplier * std::exp(eq.r2 * b);
  };
  const Bracket bracket = expand_bracket(residual, 0.0, +1, 2.0, 1e9);
  return solve_bracketed(residual, bracket).root;
}

double barrier_dividends(const ModelParams& params, double b, double x) {
  require_barrier(b);
  require_state(x);
  const detail::BarrierTerms t(params);
  const double den = t.scaled_denominator(b);
  if (x >= b) {
    return x - b + (t.a1 - t.a2 * std::exp((t.r2 - t.r1) * b)) / den;
  }
  return (t.a1 * std::exp(t.r1 * (x - b)) - t.a2 * std::exp(t.r2 * x - t.r1 * b)) / den;
}

DualSolution::DualSolution(const ModelParams& params, double multiplier, double horizon)
    : params_(params), multiplier_(multiplier), horizon_(horizon),
      regime_(multiplier <= params.lambda_bar() ? Regime::BarrierZero : Regime::PositiveBarrier) {}

DualSolution DualSolution::solve(const ModelParams& params, double multiplier, double horizon) {
  if (!(multiplier >= 0.0) || !std::isfinite(multiplier)) {
    throw Error(ErrorCode::InvalidArgument, "multiplier must be finite and >= 0");
  }
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::InvalidArgument, "horizon T must be finite and >= 0");
  }
  DualSolution sol(params, multiplier, horizon);
  const double alpha = params.alpha();
  const double delta = params.delta();
  const double lambda = params.lambda();
  sol.penalty_offset_ = multiplier / delta * std::exp(-delta * horizon);

  if (sol.regime_ == Regime::BarrierZero) {
    sol.level_ = (params.c() + multiplier) / (lambda + delta) +
                 multiplier / delta * std::expm1(-delta * horizon);
    return sol;
  }

  const detail::BarrierTerms t(params);
  const double b = barrier_from_lambda(params, multiplier);
  const double e21 = std::exp((t.r2 - t.r1) * b);
  const double lambda_e2 = multiplier * std::exp(t.r2 * b);
  sol.barrier_ = b;
  sol.s1_ = t.a1 * (alpha * delta + lambda_e2 * t.r2 * t.a2) /
            (alpha * delta * t.scaled_denominator(b));
  sol.s2_ = -t.a2 / alpha * (alpha * sol.s1_ * e21 / t.a1 + lambda_e2 / delta);
  sol.level_ = (alpha * params.c() - lambda - delta) / (alpha * delta) + sol.penalty_offset_;
  return sol;
}

double DualSolution::c1() const noexcept {
  return regime_ == Regime::BarrierZero ? 0.0 : s1_ * std::exp(-params_.r1() * barrier_);
}

double DualSolution::c2() const noexcept {
  return regime_ == Regime::BarrierZero ? 0.0 : s2_ * std::exp(-params_.r2() * barrier_);
}

double DualSolution::value(double x) const {
  require_state(x);
  if (x >= barrier_) return x - barrier_ + level_;
  const double d = x - barrier_;
  return s1_ * std::exp(params_.r1() * d) + s2_ * std::exp(params_.r2() * d) + penalty_offset_;
}

double DualSolution::derivative(double x) const {
  require_state(x);
  if (x >= barrier_) return 1.0;
  const double d = x - barrier_;
  return s1_ * params_.r1() * std::exp(params_.r1() * d) +
         s2_ * params_.r2() * std::exp(params_.r2() * d);
}

double DualSolution::penalized_value(double x) const {
  const double k_t = discounted_horizon(horizon_, params_.delta());
  return value(x) + multiplier_ * k_t;
}

double DualSolution::claim_convolution(double x) const {
  require_state(x);
  const double alpha = params_.alpha();
  const double free_part = multiplier_ / params_.delta();

  // int_0^z W(z - y) alpha e^{-alpha y} dy over the curved branch, z <= b.
  auto curved = [&](double z) {
    if (regime_ == Regime::BarrierZero) return 0.0;
    const double r1 = params_.r1();
    const double r2 = params_.r2();
    return -free_part * std::expm1(-alpha * z) +
           s1_ * alpha / (alpha + r1) *
               (std::exp(r1 * (z - barrier_)) - std::exp(-alpha * z - r1 * barrier_)) +
           s2_ * alpha / (alpha + r2) *
               (std::exp(r2 * (z - barrier_)) - std::exp(-alpha * z - r2 * barrier_));
  };
  if (x <= barrier_) return curved(x);

  const double d = x - barrier_;
  const double level = penalized_value(barrier_);
  const double tail = -std::expm1(-alpha * d);  // 1 - e^{-alpha d}
  const double linear = (d + level) * tail - (tail - alpha * d * std::exp(-alpha * d)) / alpha;
  return std::exp(-alpha * d) * curved(barrier_) + linear;
}

namespace {

HjbResidual assemble(const DualSolution& sol, double x, double convolution) {
  const ModelParams& p = sol.params();
  const double w = sol.penalized_value(x);
  const double dw = sol.derivative(x);
  return {sol.multiplier() + p.c() * dw + p.lambda() * convolution - (p.lambda() + p.delta()) * w,
          1.0 - dw};
}

}  // namespace

HjbResidual hjb_residual(const DualSolution& sol, double x, double quad_tol) {
  require_state(x);
  const double alpha = sol.params().alpha();
  auto integrand = [&sol, x, alpha](double y) {
    return sol.penalized_value(std::max(x - y, 0.0)) * alpha * std::exp(-alpha * y);
  };
  double convolution = 0.0;
  const double kink = x - sol.barrier();
  if (kink > 0.0) {
    convolution = adaptive_simpson(integrand, 0.0, kink, 0.5 * quad_tol) +
                  adaptive_simpson(integrand, kink, x, 0.5 * quad_tol);
  } else {
    convolution = adaptive_simpson(integrand, 0.0, x, quad_tol);
  }
  return assemble(sol, x, convolution);
}

HjbResidual hjb_residual_closed_form(const DualSolution& sol, double x) {
  return assemble(sol, x, sol.claim_convolution(x));
}

}  // namespace definetti
