#include <doctest.h>

#include <cmath>

#include "definetti/error.hpp"
#include "definetti/model.hpp"
#include "test_support.hpp"

using namespace definetti;
using namespace definetti::testing;

TEST_CASE("reference parameters build and expose their roots") {
  const ModelParams p = reference_params();
  CHECK(p.lambda() == 1.0);
  CHECK(p.c() == 1.3);
  CHECK(p.r1() == doctest::Approx(frozen::r1).epsilon(1e-14));
  CHECK(p.r2() == doctest::Approx(frozen::r2).epsilon(1e-14));
  CHECK(p.net_profit());
}

TEST_CASE("non-positive parameters are rejected by name") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidConfig;
  };
  CHECK(code_of([] { ModelParams::create(1, -1, 1, 0.1); }) == ErrorCode::NonPositiveParameter);
  CHECK(code_of([] { ModelParams::create(0, 1, 1, 0.1); }) == ErrorCode::NonPositiveParameter);
  CHECK(code_of([] { ModelParams::create(1, 1, 1, NAN); }) == ErrorCode::NonPositiveParameter);
  try {
    ModelParams::create(1, -1, 1, 0.1);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("'c'") != std::string::npos);
  }
}

TEST_CASE("Vieta product for c = 1") {
  const ModelParams p = critical_params();
  CHECK(p.r1() * p.r2() == doctest::Approx(-0.1).epsilon(1e-14));
}

TEST_CASE("critical multiplier") {
  CHECK(lambda_bar(reference_params()) == doctest::Approx(-0.09).epsilon(1e-13));
  CHECK(lambda_bar(critical_params()) == doctest::Approx(0.21).epsilon(1e-13));
  CHECK(reference_params().lambda_bar() == lambda_bar(reference_params()));
}

TEST_CASE("roots stay accurate when alpha c is close to lambda + delta") {
  // linear coefficient of p(R) cancels to ~1e-12
  const ModelParams p = ModelParams::create(1.0, 1.1 + 1e-12, 1.0, 0.1);
  const auto [n1, n2] = naive_roots(1.0, 1.1 + 1e-12, 1.0, 0.1);
  CHECK(rel_close(p.r1(), static_cast<double>(n1), 1e-12));
  CHECK(rel_close(p.r2(), static_cast<double>(n2), 1e-12));
}

TEST_CASE("property: roots, Vieta and alpha + r2 > 0 over random models") {
  ParamGenerator gen(20240611);
  for (int i = 0; i < 2000; ++i) {
    const ModelParams p = gen.next();
    const Roots r = characteristic_roots(p);
    CHECK(r.r2 < 0.0);
    CHECK(r.r1 > 0.0);
    CHECK(p.alpha() + r.r2 > 0.0);
    // p(r) = 0 relative to the size of its terms
    for (double root : {r.r1, r.r2}) {
      const double scale = p.c() * root * root + std::abs(p.alpha() * p.c() - p.lambda() - p.delta()) * std::abs(root) +
                           p.alpha() * p.delta();
      CHECK(std::abs(characteristic_polynomial(p, root)) <= 1e-12 * scale);
    }
    CHECK(rel_close(r.r1 * r.r2, -p.alpha() * p.delta() / p.c(), 1e-12));
    CHECK(rel_close(r.r1 + r.r2, -(p.alpha() * p.c() - (p.lambda() + p.delta())) / p.c(), 1e-12,
                    1e-15 * (std::abs(r.r1) + std::abs(r.r2))));
    const auto [n1, n2] = naive_roots(p.lambda(), p.c(), p.alpha(), p.delta());
    CHECK(rel_close(r.r1, static_cast<double>(n1), 1e-10));
    CHECK(rel_close(r.r2, static_cast<double>(n2), 1e-10));
  }
}

TEST_CASE("constraint horizon") {
  const ModelParams p = reference_params();
  CHECK(Constraint::from_horizon(p, 0.0).discounted == 0.0);
  CHECK(Constraint::from_horizon(p, 20.0).discounted == doctest::Approx(frozen::k20).epsilon(1e-14));
  CHECK(Constraint::from_horizon(p, 1.0).discounted == doctest::Approx(frozen::k1).epsilon(1e-14));
  CHECK(Constraint::from_discounted(p, frozen::k20).horizon == doctest::Approx(20.0).epsilon(1e-13));
  CHECK_THROWS_AS(Constraint::from_horizon(p, -1.0), Error);
  CHECK_THROWS_AS(Constraint::from_discounted(p, 10.0), Error);

  double prev = -1.0;
  for (double t = 0.0; t < 300.0; t += 0.5) {
    const double k = Constraint::from_horizon(p, t).discounted;
    CHECK(k > prev);
    CHECK(k < 1.0 / p.delta());
    prev = k;
  }
}
