#include "definetti/rootfind.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "definetti/error.hpp"

namespace definetti {

namespace {

bool opposite_signs(double a, double b) { return (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0); }

}  // namespace

Bracket make_bracket(const ScalarFunction& f, double lo, double hi) {
  if (!(lo < hi)) {
    throw Error(ErrorCode::NoSignChange, "bracket requires lo < hi");
  }
  const Bracket b{lo, hi, f(lo), f(hi)};
  if (!opposite_signs(b.f_lo, b.f_hi)) {
    throw Error(ErrorCode::NoSignChange, "f has the same sign at both bracket ends");
  }
  return b;
}

RootResult solve_bracketed(const ScalarFunction& f, const Bracket& bracket,
                           const SolveOptions& options) {
  if (bracket.f_lo == 0.0) return {bracket.lo, 0.0, 0, 0.0};
  if (bracket.f_hi == 0.0) return {bracket.hi, 0.0, 0, 0.0};
  if (!(bracket.lo < bracket.hi) || !opposite_signs(bracket.f_lo, bracket.f_hi) ||
      std::isnan(bracket.f_lo) || std::isnan(bracket.f_hi)) {
    throw Error(ErrorCode::NoSignChange, "invalid bracket");
  }

  const double tol_abs = options.tol_abs;
  const double tol_rel = options.tol_rel;
  auto converged = [tol_abs, tol_rel](double a, double b) {
    return std::abs(b - a) <= tol_abs + tol_rel * std::min(std::abs(a), std::abs(b));
  };

  std::uintmax_t iterations = static_cast<std::uintmax_t>(options.max_iter);
  const auto [a, b] = boost::math::tools::toms748_solve(f, bracket.lo, bracket.hi, bracket.f_lo,
                                                        bracket.f_hi, converged, iterations);
  const double root = 0.5 * (a + b);
  const double residual = f(root);
  if (residual != 0.0 && !converged(a, b)) {
    throw Error(ErrorCode::MaxIterExceeded,
                "root not converged after " + std::to_string(options.max_iter) + " iterations");
  }
  return {root, residual, static_cast<int>(iterations), 0.5 * (b - a)};
}

Bracket expand_bracket(const ScalarFunction& f, double start, int direction, double growth,
                       double limit, double initial_step) {
  if (direction == 0 || !(growth > 1.0) || !(initial_step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "expand_bracket needs a direction, growth > 1, step > 0");
  }
  const double sign = direction > 0 ? 1.0 : -1.0;
  const double f_start = f(start);
  if (f_start == 0.0) return {start, start, 0.0, 0.0};

  double step = initial_step;
  double prev = start;
  double f_prev = f_start;
  for (;;) {
    double trial = start + sign * step;
    const bool capped = sign > 0 ? trial >= limit : trial <= limit;
    if (capped) trial = limit;
    const double f_trial = f(trial);
    if (opposite_signs(f_prev, f_trial)) {
      return sign > 0 ? Bracket{prev, trial, f_prev, f_trial} : Bracket{trial, prev, f_trial, f_prev};
    }
    if (capped) {
      throw Error(ErrorCode::NoRootInRange, "no sign change before the search limit");
    }
    prev = trial;
    f_prev = f_trial;
    step *= growth;
  }
}

}  // namespace definetti
