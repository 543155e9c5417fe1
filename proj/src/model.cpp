#include "definetti/model.hpp"

#include <cmath>
#include <string>

#include "definetti/error.hpp"

namespace definetti {

namespace {

void require_positive(const char* name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::NonPositiveParameter,
                std::string("parameter '") + name + "' must be finite and > 0");
  }
}

Roots roots_of(double lambda, double c, double alpha, double delta) {
  const double linear = alpha * c - (lambda + delta);
  const double constant = -alpha * delta;
  // Discriminant is a sum of positive terms, so no cancellation here.
  const double sqrt_disc = std::sqrt(linear * linear - 4.0 * c * constant);
  // Larger-magnitude root first, the other through the product constant / c.
  const double q = -0.5 * (linear + std::copysign(sqrt_disc, linear));
  const double first = q / c;
  const double second = constant / q;
  return first > 0.0 ? Roots{first, second} : Roots{second, first};
}

}  // namespace

ModelParams::ModelParams(double lambda, double c, double alpha, double delta)
    : lambda_(lambda),
      c_(c),
      alpha_(alpha),
      delta_(delta),
      roots_(roots_of(lambda, c, alpha, delta)),
      lambda_bar_((delta + lambda) * (delta + lambda) / (alpha * lambda) - c) {}

ModelParams ModelParams::create(double lambda, double c, double alpha, double delta) {
  require_positive("lambda", lambda);
  require_positive("c", c);
  require_positive("alpha", alpha);
  require_positive("delta", delta);
  return ModelParams(lambda, c, alpha, delta);
}

double characteristic_polynomial(const ModelParams& p, double r) noexcept {
  return p.c() * r * r + (p.alpha() * p.c() - (p.lambda() + p.delta())) * r -
         p.alpha() * p.delta();
}

Roots characteristic_roots(const ModelParams& p) noexcept {
  return roots_of(p.lambda(), p.c(), p.alpha(), p.delta());
}

double lambda_bar(const ModelParams& p) noexcept {
  const double s = p.delta() + p.lambda();
  return s * s / (p.alpha() * p.lambda()) - p.c();
}

double discounted_horizon(double horizon, double delta) noexcept {
  return -std::expm1(-delta * horizon) / delta;
}

Constraint Constraint::from_horizon(const ModelParams& params, double horizon) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::InvalidArgument, "horizon T must be finite and >= 0");
  }
  return {horizon, discounted_horizon(horizon, params.delta())};
}

Constraint Constraint::from_discounted(const ModelParams& params, double discounted) {
  const double delta = params.delta();
  if (!(discounted >= 0.0) || !(discounted * delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "discounted horizon K must lie in [0, 1/delta)");
  }
  return {-std::log1p(-delta * discounted) / delta, discounted};
}

}  // namespace definetti
