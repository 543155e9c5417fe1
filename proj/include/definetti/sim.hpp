#pragma once

#include <cstdint>

#include "definetti/model.hpp"

namespace definetti {

struct SimConfig {
  std::uint64_t n_paths = 100000;
  std::uint64_t seed = 0;
  double t_max = 0.0;  ///< truncation horizon; must be > 0 (see default_t_max)
  double barrier = 0.0;
  double x0 = 0.0;
  unsigned threads = 0;  ///< 0 picks hardware concurrency; results do not depend on it
};

/// 40 / delta: the truncation bias e^{-delta t_max} / delta is below double precision.
double default_t_max(const ModelParams& params) noexcept;

struct SimEstimate {
  double mean_dividends;
  double se_dividends;
  double mean_psi;
  double se_psi;
  double truncation_bound;  ///< e^{-delta t_max} / delta
  std::uint64_t n_ruined;   ///< paths ruined before t_max
  std::uint64_t n_paths;
};

/// Event-driven simulation of the surplus under a barrier strategy. Between
/// claims the surplus drifts up at rate c until it reaches the barrier, where
/// the premium is paid out; discounted dividends and discounted lifetime are
/// integrated exactly on every segment. Throws Error(InvalidConfig).
SimEstimate simulate(const ModelParams& params, const SimConfig& config);

struct SlackEstimate {
  double mean;  ///< mean_psi - K_T
  double se;
  double ci_low;
  double ci_high;
  double confidence;
};

/// psi estimate minus K_T with a two-sided 99% normal interval.
SlackEstimate estimate_constraint_slack(const ModelParams& params, const SimConfig& config,
                                        double horizon);

}  // namespace definetti
