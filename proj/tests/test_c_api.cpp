#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "definetti/definetti.h"

namespace {

struct Model {
  dfn_model* m = nullptr;
  Model(double lambda = 1.0, double c = 1.3, double alpha = 1.0, double delta = 0.1) {
    REQUIRE(dfn_model_create(lambda, c, alpha, delta, &m) == DFN_OK);
  }
  ~Model() { dfn_model_destroy(m); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(dfn_abi_version() == DFN_ABI_VERSION);
  CHECK(std::string(dfn_status_string(DFN_OK)) == "OK");
  for (int s = 1; s <= 12; ++s) {
    CHECK(std::strlen(dfn_status_string(static_cast<dfn_status>(s))) > 0);
  }
  CHECK(std::string(dfn_case_string(DFN_CASE_ACTIVE)) == "ActiveConstraint");
}

TEST_CASE("model creation errors carry codes and messages") {
  dfn_model* m = nullptr;
  CHECK(dfn_model_create(1.0, -1.0, 1.0, 0.1, &m) == DFN_ERR_NON_POSITIVE_PARAMETER);
  CHECK(m == nullptr);
  CHECK(std::string(dfn_last_error()).find('c') != std::string::npos);
  CHECK(dfn_model_create(1.0, 1.0, 1.0, 0.1, nullptr) == DFN_ERR_NULL_POINTER);
  dfn_model_destroy(nullptr);
}

TEST_CASE("last error is per thread") {
  dfn_model* m = nullptr;
  CHECK(dfn_model_create(0.0, 1.0, 1.0, 0.1, &m) == DFN_ERR_NON_POSITIVE_PARAMETER);
  std::string other;
  std::thread([&other] { other = dfn_last_error(); }).join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(dfn_last_error()).empty());
}

TEST_CASE("roots, critical multiplier and barrier map") {
  Model model;
  double r1 = 0, r2 = 0;
  REQUIRE(dfn_model_roots(model.m, &r1, &r2) == DFN_OK);
  CHECK(r1 == doctest::Approx(0.21089672205953395).epsilon(1e-14));
  CHECK(r2 == doctest::Approx(-0.3647428759056878).epsilon(1e-14));
  double lb = 0;
  REQUIRE(dfn_model_lambda_bar(model.m, &lb) == DFN_OK);
  CHECK(std::abs(lb + 0.09) <= 1e-10);
  double l0 = 0;
  REQUIRE(dfn_lambda_from_barrier(model.m, 0.0, &l0) == DFN_OK);
  CHECK(std::abs(l0 + 0.09) <= 1e-10);
  double b0 = 0;
  REQUIRE(dfn_barrier_from_lambda(model.m, 0.0, &b0) == DFN_OK);
  CHECK(b0 == doctest::Approx(0.78271474668951029).epsilon(1e-11));
  int np = 0;
  REQUIRE(dfn_model_net_profit(model.m, &np) == DFN_OK);
  CHECK(np == 1);
  CHECK(dfn_model_roots(nullptr, &r1, &r2) == DFN_ERR_NULL_POINTER);
  CHECK(dfn_model_roots(model.m, nullptr, &r2) == DFN_ERR_NULL_POINTER);
  CHECK(dfn_lambda_from_barrier(model.m, -1.0, &l0) == DFN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("dual handle") {
  Model model;
  dfn_dual* d = nullptr;
  REQUIRE(dfn_dual_solve(model.m, 0.0, 1.0, &d) == DFN_OK);
  dfn_dual_info info{};
  REQUIRE(dfn_dual_get_info(d, &info) == DFN_OK);
  CHECK(info.regime == DFN_REGIME_POSITIVE_BARRIER);
  CHECK(info.barrier == doctest::Approx(0.78271474668951029).epsilon(1e-11));
  double v = 0;
  REQUIRE(dfn_dual_value(d, info.barrier, &v) == DFN_OK);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dfn_dual_value(d, -1.0, &v) == DFN_ERR_NEGATIVE_STATE);
  double gen = 0, grad = 0;
  REQUIRE(dfn_dual_hjb_residual(d, 0.4, 1e-10, &gen, &grad) == DFN_OK);
  CHECK(std::abs(gen) <= 1e-8);
  CHECK(dfn_dual_hjb_residual(d, 2.0, 1e-300, &gen, &grad) == DFN_ERR_QUADRATURE_FAILURE);
  dfn_dual_destroy(d);
  dfn_dual_destroy(nullptr);
  CHECK(dfn_dual_solve(model.m, -1.0, 1.0, &d) == DFN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("lifetime functional and targeting") {
  Model model;
  double v = 0;
  REQUIRE(dfn_psi(model.m, 2.0, 0.0, &v) == DFN_OK);
  CHECK(v == doctest::Approx(2.3640248553099354).epsilon(1e-12));
  REQUIRE(dfn_psi_hat(model.m, 1.0, &v) == DFN_OK);
  CHECK(v == doctest::Approx(5.588932274081064).epsilon(1e-12));
  REQUIRE(dfn_dpsi_db(model.m, 2.0, 1.0, &v) == DFN_OK);
  CHECK(v > 0.0);
  REQUIRE(dfn_horizon_threshold(model.m, 0.0, &v) == DFN_OK);
  CHECK(v == doctest::Approx(4.537254422137952).epsilon(1e-12));
  double k20 = 0;
  REQUIRE(dfn_discounted_horizon(model.m, 20.0, &k20) == DFN_OK);
  REQUIRE(dfn_feasibility_threshold(model.m, k20, &v) == DFN_OK);
  CHECK(std::abs(v - 4.24) <= 0.01);
  CHECK(dfn_barrier_for_target(model.m, 1.0, k20, &v) == DFN_ERR_TARGET_UNREACHABLE);
  REQUIRE(dfn_barrier_for_target(model.m, 10.0, k20, &v) == DFN_OK);
  CHECK(v == doctest::Approx(6.9470580098171226).epsilon(1e-10));
  double t = 0;
  REQUIRE(dfn_horizon_from_discounted(model.m, k20, &t) == DFN_OK);
  CHECK(t == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("constrained solve") {
  Model model;
  dfn_outcome out{};
  REQUIRE(dfn_solve(model.m, 10.0, 1.0, &out) == DFN_OK);
  CHECK(out.case_tag == DFN_CASE_INACTIVE);
  CHECK(out.has_pair == 1);
  CHECK(out.lambda_star == 0.0);
  REQUIRE(dfn_solve(model.m, 10.0, 20.0, &out) == DFN_OK);
  CHECK(out.case_tag == DFN_CASE_ACTIVE);
  CHECK(out.lambda_star == doctest::Approx(1.935350081568964823).epsilon(1e-9));
  REQUIRE(dfn_solve(model.m, 1.0, 20.0, &out) == DFN_OK);
  CHECK(out.case_tag == DFN_CASE_INFEASIBLE);
  CHECK(out.value_is_neg_inf == 1);
  CHECK(out.has_pair == 0);
  double psi_hat2 = 0;
  REQUIRE(dfn_psi_hat(model.m, 2.0, &psi_hat2) == DFN_OK);
  REQUIRE(dfn_solve_discounted(model.m, 2.0, psi_hat2, &out) == DFN_OK);
  CHECK(out.case_tag == DFN_CASE_DO_NOTHING);
  CHECK(out.limit_strategy == 1);
  CHECK(out.value == 0.0);
  CHECK(dfn_solve(model.m, -1.0, 1.0, &out) == DFN_ERR_INVALID_ARGUMENT);
  CHECK(dfn_solve(model.m, 1.0, 1.0, nullptr) == DFN_ERR_NULL_POINTER);

  dfn_gap_report gap{};
  REQUIRE(dfn_duality_gap(model.m, 10.0, 20.0, 1e-6, &gap) == DFN_OK);
  CHECK(gap.within_tolerance == 1);
  CHECK(gap.gap <= 1e-6);
  CHECK(dfn_duality_gap(model.m, 1.0, 20.0, 1e-6, &gap) == DFN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("curves through the C interface") {
  Model model;
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> barriers(grid.size()), values(grid.size());
  REQUIRE(dfn_dual_curve(model.m, 10.0, 20.0, grid.data(), grid.size(), barriers.data(), values.data()) ==
          DFN_OK);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(barriers[i] > barriers[i - 1]);
  const std::vector<double> bad{1.0, 0.5};
  CHECK(dfn_dual_curve(model.m, 10.0, 20.0, bad.data(), bad.size(), barriers.data(), values.data()) ==
        DFN_ERR_INVALID_ARGUMENT);
  CHECK(dfn_dual_curve(model.m, 10.0, 20.0, grid.data(), 0, barriers.data(), values.data()) ==
        DFN_ERR_INVALID_ARGUMENT);
  std::vector<double> products(grid.size());
  REQUIRE(dfn_slack_limit_profile(model.m, 2.0, grid.data(), grid.size(), products.data()) == DFN_OK);
  CHECK(products[0] == 0.0);
}

TEST_CASE("simulation through the C interface") {
  Model model;
  dfn_sim_config cfg{};
  REQUIRE(dfn_sim_config_default(model.m, 2.0, 0.0, &cfg) == DFN_OK);
  CHECK(cfg.n_paths == 100000);
  CHECK(cfg.t_max == doctest::Approx(400.0));
  cfg.n_paths = 20000;
  dfn_sim_estimate est{};
  REQUIRE(dfn_simulate(model.m, &cfg, &est) == DFN_OK);
  CHECK(std::abs(est.mean_psi - 2.3640248553099354) <= 4.0 * est.se_psi);
  cfg.t_max = 0.0;
  CHECK(dfn_simulate(model.m, &cfg, &est) == DFN_ERR_INVALID_CONFIG);
  cfg.t_max = 400.0;
  dfn_slack_estimate slack{};
  REQUIRE(dfn_estimate_constraint_slack(model.m, &cfg, 1.0, &slack) == DFN_OK);
  CHECK(slack.ci_low > 0.0);
  CHECK(dfn_simulate(model.m, nullptr, &est) == DFN_ERR_NULL_POINTER);
}
