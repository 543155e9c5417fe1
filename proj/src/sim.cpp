#include "definetti/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "definetti/error.hpp"

namespace definetti {

double default_t_max(const ModelParams& params) noexcept { return 40.0 / params.delta(); }

namespace {

struct PathResult {
  double dividends;
  double lifetime;
  bool ruined;
};

// One independent stream per (seed, path) so results do not depend on scheduling.
std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t path) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
  return std::mt19937_64(seq);
}

PathResult run_path(const ModelParams& p, const SimConfig& cfg, std::uint64_t path) {
  std::mt19937_64 rng = path_engine(cfg.seed, path);
  std::exponential_distribution<double> inter_arrival(p.lambda());
  std::exponential_distribution<double> claim(p.alpha());

  const double c = p.c();
  const double delta = p.delta();
  const double b = cfg.barrier;
  // Everything above the barrier is paid out at time 0.
  double dividends = std::max(cfg.x0 - b, 0.0);
  double x = std::min(cfg.x0, b);
  double t = 0.0;

  for (;;) {
    const double wait = inter_arrival(rng);
    const double next = t + wait;
    const double hit = t + (b - x) / c;  // time the drift reaches the barrier
    if (hit < next && hit < cfg.t_max) {
      const double end = std::min(next, cfg.t_max);
      dividends += c / delta * (std::exp(-delta * hit) - std::exp(-delta * end));
    }
    if (next >= cfg.t_max) {
      return {dividends, -std::expm1(-delta * cfg.t_max) / delta, false};
    }
    x = std::min(x + c * wait, b);
    t = next;
    x -= claim(rng);
    if (x < 0.0) {
      return {dividends, -std::expm1(-delta * t) / delta, true};
    }
  }
}

struct Moments {
  double mean;
  double se;
};

// Welford in path order, so the reduction is deterministic.
Moments moments(const std::vector<PathResult>& results, double PathResult::*field) {
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t n = 0;
  for (const PathResult& r : results) {
    ++n;
    const double v = r.*field;
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

void validate(const SimConfig& cfg) {
  if (cfg.n_paths < 1) throw Error(ErrorCode::InvalidConfig, "n_paths must be >= 1");
  if (!(cfg.t_max > 0.0) || !std::isfinite(cfg.t_max)) {
    throw Error(ErrorCode::InvalidConfig, "t_max must be finite and > 0");
  }
  if (!(cfg.barrier >= 0.0) || !std::isfinite(cfg.barrier)) {
    throw Error(ErrorCode::InvalidConfig, "barrier must be finite and >= 0");
  }
  if (!(cfg.x0 >= 0.0) || !std::isfinite(cfg.x0)) {
    throw Error(ErrorCode::InvalidConfig, "x0 must be finite and >= 0");
  }
}

}  // namespace

SimEstimate simulate(const ModelParams& params, const SimConfig& config) {
  validate(config);
  std::vector<PathResult> results(config.n_paths);

  unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(workers == 0 ? 1 : workers, 1, config.n_paths));
  auto work = [&](unsigned w) {
    for (std::uint64_t i = w; i < config.n_paths; i += workers) {
      results[i] = run_path(params, config, i);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  const Moments div = moments(results, &PathResult::dividends);
  const Moments life = moments(results, &PathResult::lifetime);
  const auto ruined = static_cast<std::uint64_t>(
      std::count_if(results.begin(), results.end(), [](const PathResult& r) { return r.ruined; }));
  return {div.mean, div.se, life.mean, life.se,
          std::exp(-params.delta() * config.t_max) / params.delta(), ruined, config.n_paths};
}

SlackEstimate estimate_constraint_slack(const ModelParams& params, const SimConfig& config,
                                        double horizon) {
  const Constraint constraint = Constraint::from_horizon(params, horizon);
  const SimEstimate est = simulate(params, config);
  // Two-sided 99% standard normal quantile.
  constexpr double z = 2.5758293035489004;
  const double mean = est.mean_psi - constraint.discounted;
  return {mean, est.se_psi, mean - z * est.se_psi, mean + z * est.se_psi, 0.99};
}

}  // namespace definetti
