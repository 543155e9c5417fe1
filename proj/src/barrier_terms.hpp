#pragma once

#include <cmath>

#include "definetti/model.hpp"

namespace definetti::detail {

// Quantities shared by the barrier formulas. Every e^{r1 b} is divided out
// so that exponentials stay bounded for deep barriers: the scaled
// denominator is e^{-r1 b} [r1 (alpha+r1) e^{r1 b} - r2 (alpha+r2) e^{r2 b}].
struct BarrierTerms {
  double r1;
  double r2;
  double a1;  // alpha + r1
  double a2;  // alpha + r2, positive for every valid model
  double alpha;
  double delta;

  explicit BarrierTerms(const ModelParams& p)
      : r1(p.r1()), r2(p.r2()), a1(p.alpha() + p.r1()), a2(p.alpha() + p.r2()),
        alpha(p.alpha()), delta(p.delta()) {}

  double scaled_denominator(double b) const {
    return r1 * a1 - r2 * a2 * std::exp((r2 - r1) * b);
  }

  // e^{-r2 b} (psi_b(x) - psi_hat(x)) for 0 <= x <= b.
  double scaled_gap(double b, double x) const {
    const double bracket = a1 * std::exp(r1 * (x - b)) - a2 * std::exp(r2 * x - r1 * b);
    return a2 * r2 * bracket / (alpha * delta * scaled_denominator(b));
  }
};

}  // namespace definetti::detail
