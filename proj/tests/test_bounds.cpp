#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "radial2d/bounds.hpp"
#include "radial2d/channels.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace radial2d;

namespace {

RadialPotential square_well() { return make_catalog_potential("square-well", {}); }
RadialPotential counterexample() { return make_catalog_potential("power-log-tail", {}); }

// int_0^1 r |ln(r/R)| dr for the unit well
double square_logweight(double R) {
  if (R >= 1.0) return std::log(R) / 2.0 + 0.25;
  return R * R / 2.0 - 0.25 - std::log(R) / 2.0;
}

}  // namespace

TEST_CASE("zero potential bounds are one") {
  const auto zero = make_catalog_potential("square-well", {{"height", 0.0}});
  const auto r = bound_report(zero, 10.0);
  CHECK(r.chad == 1.0);
  CHECK(r.chad_sharp == 1.0);
  CHECK(r.chad_min.value == 1.0);
  CHECK(r.lt_nonradial == 0.0);
  CHECK(r.weak == 1.0);
}

TEST_CASE("square well closed forms") {
  const auto P = square_well();
  const double s = 2.0 / std::sqrt(3.0);
  CHECK_THAT(kTwoOverSqrt3, WithinRel(s, 1e-15));
  CHECK_THAT(bound_chad(P, 100.0, 1.0), WithinRel(1.0 + 25.0 + s * 50.0, 1e-10));
  CHECK_THAT(bound_chad(P, 100.0, 1.0), WithinAbs(83.735, 1e-3));
  CHECK_THAT(bound_chad_sharp(P, 100.0), WithinRel(76.0, 1e-10));
  CHECK_THAT(bound_lt_nonradial(P, 100.0), WithinRel(50.0, 1e-10));
  for (double R : {0.1, 0.5, 0.9, 2.0, 10.0})
    CHECK_THAT(bound_chad(P, 7.0, R), WithinRel(1.0 + 7.0 * (square_logweight(R) + s * 0.5), 1e-9));
}

TEST_CASE("minimum over R") {
  const auto P = square_well();
  // d/dR of R^2/2 - ln(R)/2 vanishes at R = 1/sqrt 2
  const double best = 1.0 + 50.0 * (square_logweight(1.0 / std::sqrt(2.0)) + kTwoOverSqrt3 * 0.5);
  const auto m = bound_chad_min_over_R(P, 50.0, geometric_grid(0.5, 1.0, 401));
  CHECK_THAT(m.value, WithinRel(best, 1e-6));
  CHECK_THAT(m.R, WithinAbs(1.0 / std::sqrt(2.0), 2e-3));
  const auto coarse = bound_chad_min_over_R(P, 50.0);
  CHECK(coarse.value >= m.value);
  CHECK(coarse.value <= bound_chad(P, 50.0, 1.0));
  CHECK_THROWS_AS(bound_chad_min_over_R(P, 50.0, {}), invalid_argument);
}

TEST_CASE("bound ordering across the catalog") {
  const RadialPotential pots[] = {square_well(), make_catalog_potential("gaussian", {}),
                                  make_catalog_potential("annulus-well", {{"inner", 1.0}, {"outer", 2.0}}),
                                  make_catalog_potential("bump", {{"center", 2.0}, {"width", 1.0}}),
                                  make_catalog_potential("scaled-product", {{"depth", 2.0}, {"power", 0.5}})};
  for (const auto& P : pots) {
    for (double alpha : {0.5, 5.0, 50.0}) {
      const auto r = bound_report(P, alpha);
      INFO(to_string(P.kind()) << " alpha " << alpha);
      CHECK(std::isfinite(r.chad));
      CHECK(r.chad_sharp <= r.chad);
      CHECK(r.chad_min.value <= r.chad);
      CHECK(r.lt_nonradial <= r.weak - 1.0 + 1e-12);
      CHECK(r.weak_note == "window estimate; C is not the optimal constant");
    }
  }
  const auto d2 = bound_chad_min_over_R(make_catalog_potential("scaled-product", {{"depth", 2.0}, {"power", 0.5}}), 10.0);
  CHECK(std::isfinite(d2.value));
}

TEST_CASE("counterexample has no logarithmic moment") {
  const auto r = bound_report(counterexample(), 50.0);
  CHECK(std::isinf(r.chad));
  CHECK(std::isinf(r.chad_sharp));
  CHECK(std::isinf(r.chad_min.value));
  CHECK(std::isfinite(r.lt_nonradial));
  CHECK(std::isfinite(r.weak));
  CHECK(r.quasinorm > 0.99);
  const auto b = total_count(counterexample(), 50.0);
  CHECK(static_cast<double>(b.total) <= r.weak);
  CHECK(static_cast<double>(b.nonradial) <= r.lt_nonradial);
}

TEST_CASE("weak bound algebra") {
  const auto P = make_catalog_potential("gaussian", {});
  const auto J = integral_J(P);
  CHECK_THAT(J.value, WithinRel(0.5, 1e-10));
  const double q = BoundInputs::of(P).quasinorm;
  CHECK(bound_weak(10.0, J, q, 0.0) == 1.0 + 10.0 * J.value);
  CHECK_THROWS_AS(bound_weak(10.0, J, q, -1.0), invalid_argument);
  // affine in alpha
  const double b1 = bound_weak(P, 1.0, 2.0), b2 = bound_weak(P, 2.0, 2.0), b3 = bound_weak(P, 3.0, 2.0);
  CHECK_THAT(b3 - b2, WithinRel(b2 - b1, 1e-12));
  CHECK_THAT(b1 - 1.0, WithinRel(J.value + 2.0 * q, 1e-12));
  // non-decreasing in C
  CHECK(bound_weak(10.0, J, q, 0.5) <= bound_weak(10.0, J, q, 1.5));
  Integral divergent;
  divergent.finite = false;
  divergent.value = kInf;
  CHECK(std::isinf(bound_weak(10.0, divergent, q, 1.0)));
}

TEST_CASE("counts sit below the sharp bound") {
  for (const auto& P : {square_well(), make_catalog_potential("gaussian", {}),
                        make_catalog_potential("bump", {{"center", 2.0}, {"width", 1.0}})}) {
    for (double alpha : {1.0, 10.0, 100.0}) {
      const auto b = total_count(P, alpha);
      const auto r = bound_report(P, alpha);
      INFO(to_string(P.kind()) << " alpha " << alpha);
      CHECK(static_cast<double>(b.total) <= r.chad_sharp);
      CHECK(static_cast<double>(b.total) <= r.chad_min.value);
      CHECK(static_cast<double>(b.nonradial) <= r.lt_nonradial);
    }
  }
}

TEST_CASE("empirical constant") {
  CHECK(empirical_constant({}) == 0.0);
  CHECK(empirical_constant({{10.0, 0, 0.0, 0.0}}) == 0.0);
  CHECK(empirical_constant({{10.0, 1, 0.0, 0.0}}) == 0.0);
  CHECK(std::isinf(empirical_constant({{10.0, 2, 0.0, 0.0}})));
  // (N - 1)/alpha - J over q
  CHECK_THAT(empirical_constant({{10.0, 9, 0.5, 0.2}}), WithinRel((0.8 - 0.5) / 0.2, 1e-12));
  CHECK(empirical_constant({{10.0, 3, 0.5, 0.2}}) == 0.0);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CountSample> s;
  double prev = 0.0;
  for (int i = 0; i < 40; ++i) {
    s.push_back({1.0 + 100.0 * u(rng), static_cast<long>(60.0 * u(rng)), u(rng), 0.1 + u(rng)});
    const double c = empirical_constant(s);
    CHECK(c >= prev);
    for (const auto& x : s) CHECK(static_cast<double>(x.N) <= 1.0 + x.alpha * (x.J + c * x.quasinorm) + 1e-9);
    prev = c;
  }
}
