#include <doctest.h>

#include <cmath>

#include "definetti/dual.hpp"
#include "definetti/error.hpp"
#include "definetti/primal.hpp"
#include "definetti/ruin.hpp"
#include "definetti/sim.hpp"
#include "test_support.hpp"

using namespace definetti;
using namespace definetti::testing;

namespace {

SimConfig config_for(const ModelParams& p, double b, double x0, std::uint64_t n = 100000,
                     std::uint64_t seed = 12345) {
  SimConfig cfg;
  cfg.n_paths = n;
  cfg.seed = seed;
  cfg.t_max = default_t_max(p);
  cfg.barrier = b;
  cfg.x0 = x0;
  return cfg;
}

bool within(double est, double se, double exact, double k = 3.0) {
  return std::abs(est - exact) <= k * se;
}

}  // namespace

TEST_CASE("simulation agrees with the closed forms on the reference instances") {
  const ModelParams p = reference_params();
  const double b0 = barrier_from_lambda(p, 0.0);

  const SimEstimate a = simulate(p, config_for(p, b0, 10.0));
  CHECK(within(a.mean_dividends, a.se_dividends, solve_dual(p, 0.0, 0.0).value(10.0)));
  CHECK(within(a.mean_psi, a.se_psi, psi(p, b0, 10.0)));

  const SimEstimate b = simulate(p, config_for(p, 2.0, 0.0));
  CHECK(within(b.mean_psi, b.se_psi, frozen::psi_2_0));
  CHECK(within(b.mean_dividends, b.se_dividends, barrier_dividends(p, 2.0, 0.0)));

  const SimEstimate c = simulate(p, config_for(p, 50.0, 0.0));
  CHECK(within(c.mean_psi, c.se_psi, psi_hat(p, 0.0)));

  for (const SimEstimate& e : {a, b, c}) {
    CHECK(e.mean_psi >= 0.0);
    CHECK(e.mean_psi <= 1.0 / p.delta());
    CHECK(e.se_psi >= 0.0);
    CHECK(e.se_dividends >= 0.0);
    CHECK(e.truncation_bound < 1e-15);
    CHECK(e.n_paths == 100000);
    CHECK(e.n_ruined <= e.n_paths);
  }
}

TEST_CASE("the remaining psi instances") {
  const ModelParams p = reference_params();
  const SimEstimate a = simulate(p, config_for(p, 0.783, 1.0, 100000, 7));
  CHECK(within(a.mean_psi, a.se_psi, psi(p, 0.783, 1.0)));
  const SimEstimate b = simulate(p, config_for(p, 5.0, 3.0, 100000, 8));
  CHECK(within(b.mean_psi, b.se_psi, psi(p, 5.0, 3.0)));
  CHECK(within(b.mean_dividends, b.se_dividends, barrier_dividends(p, 5.0, 3.0)));
}

TEST_CASE("results are bit-identical across runs and thread counts") {
  const ModelParams p = reference_params();
  SimConfig cfg = config_for(p, 2.0, 1.0, 20000, 99);
  cfg.threads = 1;
  const SimEstimate one = simulate(p, cfg);
  cfg.threads = 4;
  const SimEstimate four = simulate(p, cfg);
  const SimEstimate again = simulate(p, cfg);
  CHECK(one.mean_dividends == four.mean_dividends);
  CHECK(one.se_dividends == four.se_dividends);
  CHECK(one.mean_psi == four.mean_psi);
  CHECK(one.se_psi == four.se_psi);
  CHECK(one.n_ruined == four.n_ruined);
  CHECK(again.mean_psi == four.mean_psi);
  cfg.seed = 100;
  CHECK(simulate(p, cfg).mean_psi != one.mean_psi);
}

TEST_CASE("lump sum above the barrier") {
  const ModelParams p = reference_params();
  SimConfig cfg = config_for(p, 1.0, 6.0, 1, 3);
  cfg.t_max = 1e-12;  // stop right away: only the lump sum counts
  const SimEstimate e = simulate(p, cfg);
  CHECK(e.mean_dividends >= 5.0);
  CHECK(e.mean_dividends <= 5.0 + 1e-9);
}

TEST_CASE("invalid configurations") {
  const ModelParams p = reference_params();
  auto code_of = [&](SimConfig cfg) {
    try {
      simulate(p, cfg);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  SimConfig cfg = config_for(p, 1.0, 1.0, 0);
  CHECK(code_of(cfg) == ErrorCode::InvalidConfig);
  cfg = config_for(p, 1.0, 1.0, 10);
  cfg.t_max = 0.0;
  CHECK(code_of(cfg) == ErrorCode::InvalidConfig);
  cfg.t_max = -1.0;
  CHECK(code_of(cfg) == ErrorCode::InvalidConfig);
  cfg = config_for(p, -1.0, 1.0, 10);
  CHECK(code_of(cfg) == ErrorCode::InvalidConfig);
}

TEST_CASE("constraint slack intervals classify the three cases") {
  const ModelParams p = reference_params();
  const double b0 = barrier_from_lambda(p, 0.0);
  const SlackEstimate inactive = estimate_constraint_slack(p, config_for(p, b0, 10.0), 1.0);
  CHECK(inactive.ci_low > 0.0);
  CHECK(inactive.confidence == doctest::Approx(0.99));

  const PrimalOutcome active = classify_and_solve(p, 10.0, 20.0);
  const SlackEstimate a = estimate_constraint_slack(p, config_for(p, active.pair->b_star, 10.0), 20.0);
  CHECK(a.ci_low <= 0.0);
  CHECK(a.ci_high >= 0.0);

  const SlackEstimate infeasible = estimate_constraint_slack(p, config_for(p, 50.0, 1.0), 20.0);
  CHECK(infeasible.ci_high < 0.0);
  CHECK(infeasible.ci_low < infeasible.mean);
  CHECK(infeasible.mean < infeasible.ci_high);
}

TEST_CASE("coverage of 3-SE intervals over 100 seeds") {
  const ModelParams p = reference_params();
  const double exact_psi = psi(p, 2.0, 0.0);
  const double exact_div = barrier_dividends(p, 2.0, 0.0);
  int psi_hits = 0;
  int div_hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SimEstimate e = simulate(p, config_for(p, 2.0, 0.0, 10000, seed));
    psi_hits += within(e.mean_psi, e.se_psi, exact_psi) ? 1 : 0;
    div_hits += within(e.mean_dividends, e.se_dividends, exact_div) ? 1 : 0;
  }
  CHECK(psi_hits >= 99);
  CHECK(div_hits >= 99);
}
