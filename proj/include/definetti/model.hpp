#pragma once

namespace definetti {

/// Roots of c R^2 + (alpha c - (lambda + delta)) R - alpha delta, with r2 < 0 < r1.
struct Roots {
  double r1;
  double r2;
};

/// Cramer-Lundberg model with exponential claims.
///
/// Immutable once built: claim rate lambda, premium rate c, claim-size rate
/// alpha and discount rate delta, together with the characteristic roots and
/// the critical multiplier derived from them.
class ModelParams {
 public:
  /// Throws Error(NonPositiveParameter) naming the first offending field.
  static ModelParams create(double lambda, double c, double alpha, double delta);

  double lambda() const noexcept { return lambda_; }
  double c() const noexcept { return c_; }
  double alpha() const noexcept { return alpha_; }
  double delta() const noexcept { return delta_; }

  const Roots& roots() const noexcept { return roots_; }
  double r1() const noexcept { return roots_.r1; }
  double r2() const noexcept { return roots_.r2; }
  double lambda_bar() const noexcept { return lambda_bar_; }

  /// c > lambda / alpha. Not required by any formula; callers may warn on it.
  bool net_profit() const noexcept { return c_ * alpha_ > lambda_; }

 private:
  ModelParams(double lambda, double c, double alpha, double delta);

  double lambda_;
  double c_;
  double alpha_;
  double delta_;
  Roots roots_;
  double lambda_bar_;
};

/// Characteristic polynomial p(R) = c R^2 + (alpha c - lambda - delta) R - alpha delta.
double characteristic_polynomial(const ModelParams& params, double r) noexcept;

/// Cancellation-free quadratic formula on the characteristic polynomial.
Roots characteristic_roots(const ModelParams& params) noexcept;

/// (delta + lambda)^2 / (alpha lambda) - c. May be negative.
double lambda_bar(const ModelParams& params) noexcept;

/// Constraint horizon T and its discounted form K_T = (1 - e^{-delta T}) / delta.
struct Constraint {
  double horizon;
  double discounted;

  /// Throws Error(InvalidArgument) for negative or non-finite T.
  static Constraint from_horizon(const ModelParams& params, double horizon);
  /// Inverse map; requires 0 <= K < 1/delta.
  static Constraint from_discounted(const ModelParams& params, double discounted);
};

double discounted_horizon(double horizon, double delta) noexcept;

}  // namespace definetti
