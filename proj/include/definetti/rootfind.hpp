#pragma once

#include <functional>

namespace definetti {

using ScalarFunction = std::function<double(double)>;

/// Sign-changing interval: lo < hi and f_lo * f_hi <= 0.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

struct RootResult {
  double root;
  double residual;  ///< f(root)
  int iterations;
  double half_width;  ///< half-width of the final enclosing interval
};

struct SolveOptions {
  double tol_abs = 1e-12;
  double tol_rel = 1e-12;
  int max_iter = 200;
};

/// Evaluates f at both ends; throws Error(NoSignChange) if they share a sign.
Bracket make_bracket(const ScalarFunction& f, double lo, double hi);

/// Bracketed root of a continuous f (TOMS 748: bisection with secant and
/// inverse-cubic steps). Stops when f hits zero or the enclosing interval is
/// narrower than tol_abs + tol_rel * |root|. Throws NoSignChange or
/// MaxIterExceeded.
RootResult solve_bracketed(const ScalarFunction& f, const Bracket& bracket,
                           const SolveOptions& options = {});

/// Geometric search for a sign change starting at `start`: the trial end moves
/// to start + direction * step with step multiplied by `growth` each round.
/// `limit` caps the search (an upper end for direction > 0, lower for < 0).
/// Throws Error(NoRootInRange) once the cap is passed without a sign change.
Bracket expand_bracket(const ScalarFunction& f, double start, int direction,
                       double growth, double limit, double initial_step = 1.0);

}  // namespace definetti
