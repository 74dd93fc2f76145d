#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "radial2d/quadrature.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace quad = radial2d::quad;

TEST_CASE("polynomials are integrated exactly") {
  auto r = quad::integrate([](double x) { return x * x * x - 2 * x + 1; }, -1.0, 2.0);
  REQUIRE(r.converged);
  CHECK_THAT(r.value, WithinAbs(3.75, 1e-13));
}

TEST_CASE("oscillatory and peaked integrands") {
  auto r = quad::integrate([](double x) { return std::sin(50 * x); }, 0.0, std::numbers::pi);
  CHECK_THAT(r.value, WithinAbs(0.0, 1e-10));
  auto s = quad::integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0);
  CHECK_THAT(s.value, WithinRel(2.0 * std::atan(1e2) / 1e-2, 1e-9));
}

TEST_CASE("endpoint singularities converge") {
  auto r = quad::integrate([](double x) { return x > 0 ? -std::log(x) : 0.0; }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK_THAT(r.value, WithinAbs(1.0, 1e-9));
  auto s = quad::integrate([](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0);
  CHECK_THAT(s.value, WithinAbs(2.0, 1e-8));
}

TEST_CASE("semi-infinite maps") {
  auto up = quad::integrate_upper([](double t) { return std::exp(-t); }, 1.0);
  CHECK_THAT(up.value, WithinRel(std::exp(-1.0), 1e-10));
  auto lo = quad::integrate_lower([](double t) { return std::exp(2 * t); }, 0.0);
  CHECK_THAT(lo.value, WithinRel(0.5, 1e-10));
  auto cauchy = quad::integrate_upper([](double t) { return 1.0 / (1.0 + t * t); }, 0.0);
  CHECK_THAT(cauchy.value, WithinRel(std::numbers::pi / 2, 1e-9));
}

TEST_CASE("subdivision budget exhaustion is reported") {
  quad::Tolerance tight{1e-300, 1e-300, 5};
  auto r = quad::integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight);
  CHECK_FALSE(r.converged);
}

TEST_CASE("piecewise integration honours breakpoints") {
  auto step = [](double x) { return x < 0.3 ? 1.0 : 2.0; };
  auto r = quad::integrate_pieces(step, {0.0, 0.3, 1.0});
  CHECK_THAT(r.value, WithinAbs(0.3 + 1.4, 1e-14));
}
