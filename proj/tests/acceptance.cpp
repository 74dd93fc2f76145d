// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is 0 when every criterion passes except those in kKnownRed,
// which are printed as FAIL and explained.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "radial2d/radial2d.hpp"

using namespace radial2d;

namespace {

// Criteria whose failure is a property of the exact answer, not of the code.
const std::vector<int> kKnownRed = {1};

struct Outcome {
  Outcome(int i, std::string n) : id(i), name(std::move(n)) {}
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Instance {
  RadialPotential P;
  std::string label;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  switch (static_cast<int>(7.0 * u(rng)) % 7) {
    case 0: {
      const double h = in(0.5, 2.0), a = in(0.5, 2.0);
      return {make_catalog_potential("square-well", {{"height", h}, {"radius", a}}), fmt("square-well h=%.3g a=%.3g", h, a)};
    }
    case 1: {
      const double h = in(0.5, 2.0), w = in(0.5, 2.0);
      return {make_catalog_potential("gaussian", {{"height", h}, {"width", w}}), fmt("gaussian h=%.3g w=%.3g", h, w)};
    }
    case 2: {
      const double ri = in(0.2, 1.5), ro = ri + in(0.2, 1.5);
      return {make_catalog_potential("annulus-well", {{"inner", ri}, {"outer", ro}}),
              fmt("annulus-well %.3g..%.3g", ri, ro)};
    }
    case 3: {
      const double c = in(0.5, 3.0), w = in(0.3, 1.0);
      return {make_catalog_potential("bump", {{"center", c}, {"width", w}}), fmt("bump c=%.3g w=%.3g", c, w)};
    }
    case 4: {
      const double tau = in(1.0, 2.0);
      return {make_catalog_potential("power-log-tail", {{"tau", tau}}), fmt("power-log-tail tau=%.3g", tau)};
    }
    case 5: {
      const double depth = static_cast<double>(1 + static_cast<int>(3.0 * u(rng)) % 3), p = in(0.5, 1.5);
      return {make_catalog_potential("scaled-product", {{"depth", depth}, {"power", p}}),
              fmt("scaled-product depth=%g power=%.3g", depth, p)};
    }
    default: {
      std::vector<double> r{0.0}, f{in(0.5, 2.0)};
      for (int i = 0; i < 4; ++i) {
        r.push_back(r.back() + in(0.2, 0.8));
        f.push_back(i == 3 ? 0.0 : in(0.0, 2.0));
      }
      return {make_tabulated(r, f), "tabulated"};
    }
  }
}

Outcome weyl_convergence() {
  Outcome o{1, "Weyl convergence for the unit disc well"};
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> alphas{200.0, 400.0, 800.0, 1600.0, 3200.0};
  const auto T = sweep(make_catalog_potential("square-well", {}), alphas);
  const double secs = seconds_since(t0);
  // exact totals from the zeros of J_{m-1}, J_1 and the Bessel recurrences
  const long pinned[] = {51, 105, 205, 405, 806};
  bool pinned_ok = T.rows.size() == alphas.size();
  bool monotone = true;
  std::string devs;
  double prev = kInf;
  for (std::size_t i = 0; i < T.rows.size(); ++i) {
    const double d = std::abs(T.rows[i].N_over_alpha - 0.25);
    pinned_ok = pinned_ok && T.rows[i].N == pinned[i];
    if (!(d < prev)) monotone = false;
    prev = d;
    devs += fmt("%s%g:%ld(%.6g)", i ? " " : "", T.rows[i].alpha, T.rows[i].N, d);
  }
  const bool last_ok = !T.rows.empty() && std::abs(T.rows.back().N_over_alpha - 0.25) <= 0.08;
  const bool time_ok = secs < 300.0;
  o.pass = pinned_ok && monotone && last_ok && time_ok;
  o.details.push_back("alpha:N(|N/alpha - 1/4|) " + devs);
  o.details.push_back(fmt("counts equal the exact Bessel-zero totals: %s", pinned_ok ? "yes" : "no"));
  o.details.push_back(fmt("|N/alpha - 1/4| strictly decreasing: %s", monotone ? "yes" : "no"));
  o.details.push_back(fmt("alpha = 3200 within 0.08 of 1/4: %s", last_ok ? "yes" : "no"));
  o.details.push_back(fmt("runtime %.2f s (limit 300 s): %s", secs, time_ok ? "yes" : "no"));
  if (!monotone && pinned_ok)
    o.details.push_back("the exact counts are not monotone in |N/alpha - 1/4| (0.005 at 200, 0.0125 at 400); "
                        "this clause cannot hold for correct counts");
  return o;
}

struct RandomCase {
  Instance inst;
  LogPotential G;
  double alpha = 0.0;
  double E = 0.0;
  BoundaryMode mode = BoundaryMode::whole_line;
};

std::vector<RandomCase> random_suite(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const BoundaryMode modes[] = {BoundaryMode::whole_line, BoundaryMode::half_line_dirichlet,
                                BoundaryMode::whole_line_dirichlet_at_0};
  std::vector<RandomCase> out;
  for (int i = 0; i < n; ++i) {
    RandomCase c;
    c.inst = random_instance(rng);
    c.G = to_log(c.inst.P);
    c.alpha = std::pow(10.0, 3.0 * u(rng));
    const double scale = c.alpha * c.G.max_value();
    c.E = -scale * std::pow(10.0, -4.0 * u(rng));
    c.mode = modes[static_cast<int>(3.0 * u(rng)) % 3];
    out.push_back(std::move(c));
  }
  return out;
}

Outcome oracle_equivalence(const std::vector<RandomCase>& suite) {
  Outcome o{2, "Pruefer and FD inertia counts agree"};
  int exact = 0, flagged = 0, bad = 0;
  for (const auto& c : suite) {
    const auto p = count_below_pruefer(c.G, c.alpha, c.E, c.mode);
    const auto f = count_below_fd(c.G, c.alpha, c.E, c.mode);
    const bool near = p.near_threshold || f.near_threshold;
    if (near) ++flagged;
    const bool ok = near ? std::abs(p.count - f.count) <= p.uncertainty + f.uncertainty : p.count == f.count;
    if (!near && ok) ++exact;
    if (!ok) {
      ++bad;
      o.details.push_back(fmt("mismatch: %s alpha=%.6g E=%.6g %s: %d vs %d", c.inst.label.c_str(), c.alpha, c.E,
                              std::string(to_string(c.mode)).c_str(), p.count, f.count));
    }
  }
  o.pass = bad == 0 && suite.size() >= 50;
  o.details.insert(o.details.begin(), fmt("%zu instances: %d exact, %d flagged near threshold, %d mismatches",
                                          suite.size(), exact, flagged, bad));
  return o;
}

Outcome counterexample_sequence() {
  Outcome o{3, "counterexample block sequence and verdict"};
  const auto z = zeta_sequence(to_log(make_catalog_potential("power-log-tail", {})), 200);
  double worst = 0.0;
  for (int k = 4; k <= 200; ++k)
    worst = std::max(worst, std::abs(z.values[static_cast<std::size_t>(k)] - std::log(k / (k - 1.0))));
  double lo = kInf, hi = 0.0;
  for (int k = 100; k <= 200; ++k) {
    const double v = k * z.values[static_cast<std::size_t>(k)];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const auto v = classify(z);
  const bool blocks_ok = worst <= 1e-6, window_ok = lo >= 0.99 && hi <= 1.01;
  const bool verdict_ok = v.verdict == "O(alpha) holds, Weyl fails";
  o.pass = blocks_ok && window_ok && verdict_ok;
  o.details.push_back(fmt("max |zeta_k - ln(k/(k-1))| over 4..200 = %.3g (limit 1e-6)", worst));
  o.details.push_back(fmt("k zeta_k over 100..200 in [%.6f, %.6f] (need [0.99, 1.01])", lo, hi));
  o.details.push_back("verdict: " + v.verdict);
  return o;
}

struct SweptPotential {
  std::string label;
  RadialPotential P;
};

std::vector<SweptPotential> swept_catalog() {
  return {
      {"square-well", make_catalog_potential("square-well", {})},
      {"gaussian", make_catalog_potential("gaussian", {})},
      {"annulus-well 1..2", make_catalog_potential("annulus-well", {{"inner", 1.0}, {"outer", 2.0}})},
      {"bump c=2 w=1", make_catalog_potential("bump", {{"center", 2.0}, {"width", 1.0}})},
      {"power-log-tail tau=1.5", make_catalog_potential("power-log-tail", {{"tau", 1.5}})},
      {"scaled-product depth 1", make_catalog_potential("scaled-product", {{"depth", 1.0}, {"power", 0.5}})},
      {"scaled-product depth 2", make_catalog_potential("scaled-product", {{"depth", 2.0}, {"power", 0.5}})},
      {"scaled-product depth 3", make_catalog_potential("scaled-product", {{"depth", 3.0}, {"power", 1.0}})},
      {"tabulated", make_tabulated({0.0, 0.5, 1.0, 1.5, 2.0}, {2.0, 2.0, 1.0, 0.5, 0.0})},
      {"counterexample", make_catalog_potential("power-log-tail", {})},
  };
}

void bounds_and_sandwich(Outcome& bounds, Outcome& sandwich) {
  const auto alphas = alpha_grid(1.0, 1000.0, 4);
  int rows = 0, bound_rows = 0, bound_bad = 0, sandwich_bad = 0;
  for (const auto& s : swept_catalog()) {
    const auto T = sweep(s.P, alphas);
    const bool finite = std::isfinite(T.rows.front().chad);
    for (const auto& r : T.rows) {
      ++rows;
      if (!r.sandwich) {
        ++sandwich_bad;
        sandwich.details.push_back(fmt("%s alpha=%.6g: N=%ld outside [%ld, %ld]", s.label.c_str(), r.alpha, r.N,
                                       r.radial_dirichlet + r.nonradial, r.radial_dirichlet + r.nonradial + 1));
      }
      if (static_cast<double>(r.nonradial) > r.lt_nonradial) {
        ++bound_bad;
        bounds.details.push_back(fmt("%s alpha=%.6g: nonradial %ld > alpha J", s.label.c_str(), r.alpha, r.nonradial));
      }
      if (!finite) continue;
      ++bound_rows;
      for (const auto& v : r.violations) {
        ++bound_bad;
        bounds.details.push_back(fmt("%s alpha=%.6g: %s", s.label.c_str(), r.alpha, v.c_str()));
      }
    }
  }
  bounds.pass = bound_bad == 0;
  bounds.details.insert(bounds.details.begin(),
                        fmt("%d rows with finite integrals (of %d), alpha in [1, 1000] at 4 per decade: %d violations",
                            bound_rows, rows, bound_bad));
  sandwich.pass = sandwich_bad == 0;
  sandwich.details.insert(sandwich.details.begin(), fmt("%d swept instances: %d violations", rows, sandwich_bad));
}

Outcome duality() {
  Outcome o{5, "Birman-Schwinger duality with the radial Dirichlet count"};
  const auto alphas = alpha_grid(10.0, 100.0, 8);
  int checked = 0, exact = 0, flagged = 0, bad = 0, shallow = 0;
  for (const auto& [label, P] : std::vector<std::pair<std::string, RadialPotential>>{
           {"square-well", make_catalog_potential("square-well", {})},
           {"gaussian", make_catalog_potential("gaussian", {})},
           {"counterexample", make_catalog_potential("power-log-tail", {})}}) {
    const auto G = to_log(P);
    std::string counts;
    for (double a : alphas) {
      const auto r = bs_duality_check(G, a);
      const auto below_zero = count_below_pruefer(G, a, 0.0, BoundaryMode::whole_line_dirichlet_at_0);
      ++checked;
      const bool near = r.bs_near > 0 || below_zero.near_threshold;
      if (near) ++flagged;
      if (r.bs_count == below_zero.count) ++exact;
      else if (!near || std::abs(r.bs_count - below_zero.count) > r.bs_near + below_zero.uncertainty) ++bad;
      shallow += below_zero.count - r.radial_dirichlet;
      counts += fmt(" %d/%d", r.bs_count, below_zero.count);
    }
    o.details.push_back(label + " BS/Dirichlet:" + counts);
  }
  o.details.push_back(fmt("%d Dirichlet eigenvalues lie in (-eps, 0); they count below 0 and are flagged at -eps", shallow));
  o.pass = bad == 0;
  o.details.insert(o.details.begin(), fmt("%d couplings in [10, 100]: %d exact, %d flagged, %d mismatches", checked,
                                          exact, flagged, bad));
  return o;
}

Outcome lieb_thirring_bargmann(const std::vector<RandomCase>& suite) {
  Outcome o{7, "Lieb-Thirring and Bargmann checks"};
  int lt_bad = 0, bg_bad = 0;
  double lt_worst = 0.0, bg_worst = 0.0;
  for (const auto& c : suite) {
    const double mass = integrate_g(c.G.profile(), 0, 0.0, -kInf, kInf).value;
    const auto moment = integrate_g(c.G.profile(), 1, 0.0, 0.0, kInf);
    const double eps = threshold_epsilon(c.G, c.alpha);
    const auto ev = eigenvalues_below(c.G, c.alpha, -eps, 1u << 20);
    double sum = 0.0;
    for (double mu : ev.mu) sum += std::sqrt(mu);
    const double lt = 0.5 * c.alpha * mass;
    lt_worst = std::max(lt_worst, sum / lt);
    if (sum > lt * (1.0 + 1e-9)) {
      ++lt_bad;
      o.details.push_back(fmt("LT: %s alpha=%.6g sum %.6g > %.6g", c.inst.label.c_str(), c.alpha, sum, lt));
    }
    const auto hl = count_below_pruefer(c.G, c.alpha, -eps, BoundaryMode::half_line_dirichlet);
    const double bg = moment.finite ? c.alpha * moment.value : kInf;
    if (hl.count > 0) bg_worst = std::max(bg_worst, hl.count / bg);
    if (static_cast<double>(hl.count) > bg) {
      ++bg_bad;
      o.details.push_back(fmt("Bargmann: %s alpha=%.6g count %d > %.6g", c.inst.label.c_str(), c.alpha, hl.count, bg));
    }
  }
  o.pass = lt_bad == 0 && bg_bad == 0;
  o.details.insert(o.details.begin(),
                   fmt("%zu instances: LT violations %d (max ratio %.4f), Bargmann violations %d (max ratio %.4f)",
                       suite.size(), lt_bad, lt_worst, bg_bad, bg_worst));
  return o;
}

void print(const Outcome& o) {
  const bool known = !o.pass && std::find(kKnownRed.begin(), kKnownRed.end(), o.id) != kKnownRed.end();
  std::printf("[%s] criterion %d: %s%s\n", o.pass ? "PASS" : "FAIL", o.id, o.name.c_str(),
              known ? " (known unattainable, see details)" : "");
  for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
}

void declared() {
  std::printf("[N/A ] criterion 8: true limits and optimal constants are not reproducible at finite coupling\n");
  // window implications and the empirical constant stand in for them
  for (const auto& [label, P] : std::vector<std::pair<std::string, RadialPotential>>{
           {"counterexample", make_catalog_potential("power-log-tail", {})},
           {"square-well", make_catalog_potential("square-well", {})},
           {"power-log-tail tau=0.9", make_catalog_potential("power-log-tail", {{"tau", 0.9}})}}) {
    const auto G = to_log(P);
    const auto v = classify(zeta_sequence(G, 200));
    const auto d = delta_link(G, v);
    std::printf("    %s: n lambda_n tail/head %.3f, window implication %s (%s)\n", label.c_str(), d.ratio,
                d.tested ? (d.holds ? "holds" : "fails") : "untested", v.verdict.c_str());
  }
  const double c = empirical_constant({make_catalog_potential("square-well", {}), make_catalog_potential("gaussian", {}),
                                       make_catalog_potential("power-log-tail", {{"tau", 1.5}})},
                                      alpha_grid(1.0, 1000.0, 2));
  std::printf("    empirical constant C over 3 potentials, alpha in [1, 1000]: %.4g (lower bound only)\n", c);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Outcome> all;
  auto run = [&](Outcome o) {
    print(o);
    all.push_back(std::move(o));
  };
  run(weyl_convergence());
  const auto suite = random_suite(60, 20240101);
  run(oracle_equivalence(suite));
  run(counterexample_sequence());
  Outcome bounds{4, "bound validity audit"}, sandwich{6, "sandwich between Dirichlet and full counts"};
  bounds_and_sandwich(bounds, sandwich);
  run(bounds);
  run(duality());
  run(sandwich);
  run(lieb_thirring_bargmann(suite));
  declared();

  int unexpected = 0, known = 0;
  for (const auto& o : all) {
    if (o.pass) continue;
    if (std::find(kKnownRed.begin(), kKnownRed.end(), o.id) != kKnownRed.end())
      ++known;
    else
      ++unexpected;
  }
  std::printf("summary: %zu criteria, %d known-unattainable failures, %d unexpected failures, %.1f s\n", all.size(),
              known, unexpected, seconds_since(t0));
  return unexpected == 0 ? 0 : 1;
}
