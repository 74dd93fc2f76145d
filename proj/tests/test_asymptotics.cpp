#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "radial2d/asymptotics.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace radial2d;

namespace {

RadialPotential square_well() { return make_catalog_potential("square-well", {}); }
RadialPotential tail(double tau) { return make_catalog_potential("power-log-tail", {{"tau", tau}}); }

WeakVerdict verdict_of(const RadialPotential& P) { return classify(zeta_sequence(to_log(P), 200)); }

SweepTable table_of(std::vector<double> ratios) {
  SweepTable T;
  T.weyl = 0.25;
  double a = 1.0;
  for (double r : ratios) {
    SweepRow row;
    row.alpha = a;
    row.N_over_alpha = r;
    T.rows.push_back(row);
    a *= std::sqrt(std::sqrt(10.0));
  }
  return T;
}

}  // namespace

TEST_CASE("alpha grid") {
  const auto g = alpha_grid(1.0, 100.0, 4);
  REQUIRE(g.size() == 9);
  CHECK(g.front() == 1.0);
  CHECK_THAT(g.back(), WithinRel(100.0, 1e-12));
  CHECK_THAT(g[4], WithinRel(10.0, 1e-12));
  const auto h = alpha_grid(1.0, 50.0, 1);
  REQUIRE(h.size() == 3);
  CHECK(h.back() == 50.0);
  CHECK(alpha_grid(3.0, 3.0, 5) == std::vector<double>{3.0});
  CHECK_THROWS_AS(alpha_grid(0.0, 1.0, 2), invalid_argument);
  CHECK_THROWS_AS(alpha_grid(2.0, 1.0, 2), invalid_argument);
  CHECK_THROWS_AS(alpha_grid(1.0, 2.0, 0), invalid_argument);
}

TEST_CASE("Weyl coefficient") {
  CHECK_THAT(weyl_coefficient(square_well()), WithinRel(0.25, 1e-10));
  CHECK_THAT(weyl_coefficient(make_catalog_potential("gaussian", {})), WithinRel(0.25, 1e-10));
  CHECK_THAT(weyl_coefficient(make_catalog_potential("square-well", {{"radius", 2.0}})), WithinRel(1.0, 1e-10));
}

TEST_CASE("zero potential sweep") {
  const auto zero = make_catalog_potential("square-well", {{"height", 0.0}});
  const auto T = sweep(zero, {1.0, 10.0, 100.0});
  REQUIRE(T.rows.size() == 3);
  for (const auto& r : T.rows) {
    CHECK(r.N == 0);
    CHECK(r.chad == 1.0);
    CHECK(r.violations.empty());
    CHECK(r.sandwich);
  }
  CHECK(T.weyl == 0.0);
  CHECK(T.monotone_counts);
}

TEST_CASE("square well sweep against frozen Bessel counts") {
  const auto T = sweep(square_well(), {3200.0, 200.0, 800.0, 400.0, 1600.0});
  const long pinned[] = {51, 105, 205, 405, 806};
  REQUIRE(T.rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(T.rows[i].alpha == 200.0 * std::pow(2.0, static_cast<double>(i)));
    CHECK(T.rows[i].N == pinned[i]);
    CHECK(T.rows[i].violations.empty());
    CHECK(T.rows[i].sandwich);
    CHECK(T.rows[i].engine_disagreements == 0);
  }
  CHECK(T.monotone_counts);
  CHECK(T.sandwich_violations == 0);
  CHECK(T.bound_violations == 0);
  REQUIRE(T.ratio_deltas.size() == 4);
  CHECK_THAT(T.ratio_deltas[0], WithinAbs(105.0 / 400.0 - 51.0 / 200.0, 1e-15));

  const auto e = limit_estimates(T);
  CHECK(e.first == 3);
  CHECK(e.last == 4);
  CHECK_THAT(e.upper, WithinAbs(405.0 / 1600.0, 1e-15));
  CHECK_THAT(e.lower, WithinAbs(806.0 / 3200.0, 1e-15));

  const auto v = weyl_verdict(T, verdict_of(square_well()));
  CHECK(v.verdict == "O(alpha) holds, Weyl law holds");
  CHECK(v.status == WeylStatus::consistent);
  CHECK(v.ratios_converge);

  std::ostringstream os;
  write_csv(os, T);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "alpha,N,N_over_alpha,N_radial_dirichlet,N_nonradial,chad,chad_sharp,lt_nonradial,weak_bound");
  int lines = 0;
  while (std::getline(is, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 8);
  }
  CHECK(lines == 5);
}

TEST_CASE("limit estimates windows") {
  const auto T = table_of({0.3, 0.2, 0.26, 0.24, 0.251});
  const auto all = limit_estimates(T, 0, 4);
  CHECK(all.upper == 0.3);
  CHECK(all.lower == 0.2);
  // rows are a quarter-decade apart: the top half-decade holds the last three
  const auto top = limit_estimates(T);
  CHECK(top.first == 2);
  CHECK(top.upper == 0.26);
  CHECK(top.lower == 0.24);
  CHECK_THROWS_AS(limit_estimates(T, 3, 2), invalid_argument);
  CHECK_THROWS_AS(limit_estimates(T, 0, 5), invalid_argument);
  CHECK_THROWS_AS(limit_estimates(SweepTable{}), invalid_argument);
}

TEST_CASE("Weyl verdict never overrides the sequence") {
  WeakVerdict seq;
  seq.in_weak = Tri::yes;
  seq.in_weak_circle = Tri::yes;
  seq.verdict = "O(alpha) holds, Weyl law holds";
  const auto far = weyl_verdict(table_of({0.3, 0.31, 0.32}), seq);
  CHECK(far.verdict == seq.verdict);
  CHECK(far.status == WeylStatus::tension);

  seq.in_weak_circle = Tri::no;
  seq.verdict = "O(alpha) holds, Weyl fails";
  CHECK(weyl_verdict(table_of({0.3, 0.31, 0.32}), seq).status == WeylStatus::consistent);
  CHECK(weyl_verdict(table_of({0.25, 0.25, 0.25}), seq).status == WeylStatus::sequence_only);

  seq.in_weak = Tri::no;
  seq.in_weak_circle = Tri::no;
  seq.verdict = "O(alpha) fails";
  CHECK(weyl_verdict(table_of({0.25, 0.25, 0.25}), seq).status == WeylStatus::tension);
  CHECK(weyl_verdict(table_of({0.5, 0.7, 0.9}), seq).verdict == "O(alpha) fails");

  CHECK(weyl_verdict(SweepTable{}, seq).status == WeylStatus::sequence_only);
  CHECK(std::string(to_string(WeylStatus::sequence_only)) == "sequence-only");
}

TEST_CASE("counterexample sweep") {
  const auto P = tail(1.0);
  SweepOptions opt;
  const auto T = sweep(P, alpha_grid(10.0, 100.0, 4), opt);
  REQUIRE(T.rows.size() == 5);
  for (const auto& r : T.rows) {
    CHECK(std::isinf(r.chad));
    CHECK(std::isinf(r.chad_sharp));
    CHECK(std::isfinite(r.weak));
    CHECK(static_cast<double>(r.N) <= r.weak);
    CHECK(r.sandwich);
  }
  CHECK(T.monotone_counts);
  std::ostringstream os;
  write_csv(os, T);
  CHECK(os.str().find(",inf,inf,") != std::string::npos);
  const auto v = weyl_verdict(T, verdict_of(P));
  CHECK(v.verdict == "O(alpha) holds, Weyl fails");
  CHECK(v.status != WeylStatus::tension);
}

TEST_CASE("non-integrable potentials cannot be swept") {
  const auto slow = make_catalog_potential("power-log-tail", {{"sigma", 1.0}, {"tau", 1.0}});
  CHECK_THROWS_AS(sweep(slow, {1.0}), non_integrable);
}

TEST_CASE("budget skips remaining couplings") {
  SweepOptions opt;
  opt.budget_seconds = 1e-12;
  const auto T = sweep(square_well(), {1.0, 2.0, 3.0}, opt);
  CHECK(T.rows.size() + T.skipped.size() == 3);
  CHECK(T.skipped.size() >= 2);
}

TEST_CASE("block sequence decay and the Birman-Schwinger spectrum") {
  SECTION("nonzero window limit keeps n lambda_n flat") {
    const auto P = tail(1.0);
    const auto d = delta_link(to_log(P), verdict_of(P));
    CHECK(d.delta_zero == Tri::no);
    CHECK(d.tested);
    CHECK(d.holds);
    CHECK(d.ratio > 0.9);
    REQUIRE(d.n_lambda.size() == 64);
  }
  SECTION("zero window limit makes n lambda_n decay") {
    for (const auto& P : {square_well(), make_catalog_potential("gaussian", {}), tail(1.5),
                          make_catalog_potential("scaled-product", {{"depth", 2.0}, {"power", 1.0}})}) {
      const auto d = delta_link(to_log(P), verdict_of(P));
      INFO(to_string(P.kind()));
      CHECK(d.delta_zero == Tri::yes);
      CHECK(d.tested);
      CHECK(d.holds);
      CHECK(d.ratio < 0.9);
    }
  }
  SECTION("zero potential") {
    const auto d = delta_link(LogPotential{}, classify(zeta_sequence(LogPotential{}, 200)));
    CHECK(d.head == 0.0);
    CHECK(d.holds);
  }
  SECTION("window validation") {
    DeltaLinkOptions opt;
    opt.n_first = 10;
    opt.n_last = 12;
    CHECK_THROWS_AS(delta_link(to_log(square_well()), verdict_of(square_well()), opt), invalid_argument);
  }
}

TEST_CASE("empirical constant over a catalog") {
  const std::vector<RadialPotential> pots{square_well(), make_catalog_potential("gaussian", {})};
  const double c = empirical_constant(pots, {10.0, 100.0});
  CHECK(c >= 0.0);
  CHECK(std::isfinite(c));
  for (const auto& P : pots) {
    for (double a : {10.0, 100.0}) {
      const auto b = total_count(P, a);
      CHECK(static_cast<double>(b.total) <= bound_weak(P, a, c) + 1e-9);
    }
  }
  CHECK(empirical_constant(pots, {10.0}) <= c);
}
