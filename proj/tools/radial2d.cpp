// radial2d: command-line front end. Every subcommand prints one JSON report
// (sweep can also write CSV). Exit codes: 2 usage error, 1 failed check or
// numerical failure, 0 otherwise.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radial2d/radial2d.hpp"

using json = nlohmann::ordered_json;
using namespace radial2d;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string spec;
  double quad_abs = 1e-10;
  double quad_rel = 1e-8;
  double tail_tol = 1e-8;
  double eps_rel = 1e-9;
  double eig_tol = 1e-9;
  double pruefer_eta = 1e-6;
  double fd_factor = 1.0 / 64.0;
  unsigned threads = 0;

  QuadOptions quad() const {
    QuadOptions q;
    q.tol.abs = quad_abs;
    q.tol.rel = quad_rel;
    return q;
  }
  ChannelOptions channels() const {
    ChannelOptions c;
    c.pruefer.eta = pruefer_eta;
    c.fd.factor = fd_factor;
    c.eps_rel = eps_rel;
    c.threads = threads;
    return c;
  }
  void validate() const {
    for (double v : {quad_abs, quad_rel, tail_tol, eps_rel, eig_tol, pruefer_eta, fd_factor})
      if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("all tolerances must be positive and finite");
  }
  json to_json() const {
    json j;
    j["spec"] = spec;
    j["quad_abs"] = quad_abs;
    j["quad_rel"] = quad_rel;
    j["tail_tol"] = tail_tol;
    j["eps_rel"] = eps_rel;
    j["eig_tol"] = eig_tol;
    j["pruefer_eta"] = pruefer_eta;
    j["fd_factor"] = fd_factor;
    j["threads"] = threads ? threads : thread_count();
    return j;
  }
};

json num(double v) {
  if (std::isinf(v)) return v > 0 ? "infinite" : "-infinite";
  if (std::isnan(v)) return "nan";
  return v;
}

json integral_json(const Integral& I) {
  json j;
  j["value"] = num(I.value);
  j["error"] = I.error;
  j["finite"] = I.finite;
  return j;
}

json count_json(const CountResult& r) {
  json j;
  j["count"] = r.count;
  j["method"] = std::string(to_string(r.method));
  j["mode"] = std::string(to_string(r.mode));
  j["energy"] = r.energy;
  j["alpha"] = r.alpha;
  j["near_threshold"] = r.near_threshold;
  j["uncertainty"] = r.uncertainty;
  j["pivot_shifted"] = r.pivot_shifted;
  json d = json::array();
  for (const auto& x : r.discretization) {
    json e;
    e["kind"] = x.kind;
    e["t_lo"] = x.t_lo;
    e["t_hi"] = x.t_hi;
    e["size"] = x.size;
    e["h_min"] = x.h_min;
    e["h_max"] = x.h_max;
    e["band"] = x.band;
    d.push_back(e);
  }
  j["discretization"] = d;
  j["warnings"] = r.warnings;
  return j;
}

json breakdown_json(const ChannelBreakdown& b, bool per_channel) {
  json j;
  j["alpha"] = b.alpha;
  j["epsilon"] = b.epsilon;
  j["method"] = std::string(to_string(b.method));
  j["mu1"] = b.mu1;
  j["m_max"] = b.m_max;
  j["total"] = b.total;
  j["radial_dirichlet"] = b.radial_dirichlet;
  j["nonradial"] = b.nonradial;
  j["uncertainty"] = b.uncertainty + b.radial_dirichlet_uncertainty;
  j["engine_disagreements"] = b.engine_disagreements;
  if (per_channel) {
    json pc = json::array();
    for (const auto& c : b.per_channel) {
      json e;
      e["m"] = c.m;
      e["count"] = c.count;
      e["near_threshold"] = c.near_threshold;
      e["uncertainty"] = c.uncertainty;
      if (c.other_engine) e["other_engine"] = *c.other_engine;
      pc.push_back(e);
    }
    j["per_channel"] = pc;
  }
  j["warnings"] = b.warnings;
  return j;
}

json verdict_json(const WeakVerdict& v) {
  json j;
  j["in_weak"] = to_string(v.in_weak);
  j["in_weak_circle"] = to_string(v.in_weak_circle);
  j["text"] = v.verdict;
  j["quasinorm_window"] = v.quasinorm_window;
  j["delta_upper_window"] = v.delta_upper_window;
  j["delta_lower_window"] = v.delta_lower_window;
  const auto& e = v.evidence;
  json ev;
  ev["certified_ranks"] = e.certified;
  ev["tail_bound"] = e.tail_bound;
  ev["ladder"] = {e.p1, e.p2, e.p3};
  ev["running_sup"] = {e.M1, e.M2, e.M3};
  ev["tail_sup"] = {e.T1, e.T2, e.T3};
  ev["extrapolated_floor"] = e.extrapolated_floor;
  ev["note"] = e.note;
  j["evidence"] = ev;
  return j;
}

json report(const std::string& command, const Config& cfg, json extra_config, const RadialPotential* P) {
  json j;
  j["tool"] = "radial2d";
  j["version"] = kVersion;
  j["command"] = command;
  json c = cfg.to_json();
  for (auto it = extra_config.begin(); it != extra_config.end(); ++it) c[it.key()] = it.value();
  j["config"] = c;
  if (P) j["potential"] = to_json(*P);
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

double parse_energy(const std::string& s, bool& threshold) {
  threshold = s == "0-";
  if (threshold) return 0.0;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw UsageError("bad energy '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad energy '" + s + "' (a number or 0-)");
  }
}

// ---------------------------------------------------------------------------

int run_potential_show(const Config& cfg) {
  const auto P = load_spec(cfg.spec);
  json j = report("potential show", cfg, json::object(), &P);
  json r;
  const auto [a, b] = P.support();
  r["support"] = {num(a), num(b)};
  r["singular_at_zero"] = P.singular_at_zero();
  const auto G = to_log(P, cfg.tail_tol, cfg.quad());
  r["log_window"] = {G.t_min(), G.t_max()};
  r["max_G"] = G.max_value();
  j["result"] = r;
  emit(j);
  return 0;
}

int run_potential_integrals(const Config& cfg, double R) {
  if (!(R > 0.0)) throw UsageError("--R must be > 0");
  const auto P = load_spec(cfg.spec);
  json extra;
  extra["R"] = R;
  json j = report("potential integrals", cfg, extra, &P);
  json r;
  r["J"] = integral_json(integral_J(P, cfg.quad()));
  r["logweight"] = integral_json(integral_logweight(P, R, cfg.quad()));
  j["result"] = r;
  emit(j);
  return 0;
}

int run_seq(const Config& cfg, int K, bool full) {
  if (K < 1) throw UsageError("--K must be >= 1");
  const auto P = load_spec(cfg.spec);
  json extra;
  extra["K"] = K;
  json j = report("seq", cfg, extra, &P);
  const auto z = zeta_sequence(to_log(P, cfg.tail_tol, cfg.quad()), K);
  const auto v = classify(z);
  json r;
  if (full) r["zeta"] = z.values;
  r["probe"] = z.probe;
  r["tail_note"] = z.tail_note;
  r["quasinorm"] = quasinorm_weak(z.values);
  r["ell1"] = ell1_norm(z.values);
  json dw;
  dw["first"] = v.delta_first;
  dw["last"] = v.delta_last;
  dw["upper"] = v.delta_upper_window;
  dw["lower"] = v.delta_lower_window;
  r["delta_window"] = dw;
  r["verdict"] = verdict_json(v);
  j["result"] = r;
  emit(j);
  return 0;
}

int run_count1d(const Config& cfg, double alpha, const std::string& energy, const std::string& mode_s,
                const std::string& method) {
  if (!(alpha > 0.0)) throw UsageError("--alpha must be > 0");
  BoundaryMode mode;
  try {
    mode = parse_mode(mode_s);
  } catch (const radial2d::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool threshold = false;
  double E = parse_energy(energy, threshold);
  const auto P = load_spec(cfg.spec);
  const auto G = to_log(P, cfg.tail_tol, cfg.quad());
  if (threshold) E = -threshold_epsilon(G, alpha, cfg.eps_rel);
  json extra;
  extra["alpha"] = alpha;
  extra["energy"] = energy;
  extra["mode"] = mode_s;
  extra["method"] = method;
  json j = report("count1d", cfg, extra, &P);
  const auto opt = cfg.channels();
  json r;
  if (method == "pruefer" || method == "both") r["pruefer"] = count_json(count_below_pruefer(G, alpha, E, mode, opt.pruefer));
  if (method == "fd" || method == "both") r["fd"] = count_json(count_below_fd(G, alpha, E, mode, opt.fd));
  int status = 0;
  if (method == "both") {
    const int a = r["pruefer"]["count"], b = r["fd"]["count"];
    const int slack = r["pruefer"]["uncertainty"].get<int>() + r["fd"]["uncertainty"].get<int>();
    r["agree"] = std::abs(a - b) <= slack;
    if (!r["agree"].get<bool>()) status = 1;
  }
  j["result"] = r;
  emit(j);
  return status;
}

int run_count(const Config& cfg, double alpha, bool breakdown, const std::string& check) {
  if (!(alpha > 0.0)) throw UsageError("--alpha must be > 0");
  const auto P = load_spec(cfg.spec);
  const auto G = to_log(P, cfg.tail_tol, cfg.quad());
  json extra;
  extra["alpha"] = alpha;
  extra["breakdown"] = breakdown;
  extra["check"] = check.empty() ? json(nullptr) : json(check);
  json j = report("count", cfg, extra, &P);
  const auto opt = cfg.channels();
  const auto b = total_count(G, alpha, opt);
  json r = breakdown_json(b, breakdown);
  int status = 0;
  if (check == "sandwich") {
    const auto s = sandwich_check(b);
    json c;
    c["lower"] = s.lower;
    c["total"] = s.total;
    c["upper"] = s.upper;
    c["holds"] = s.holds;
    r["sandwich"] = c;
    if (!s.holds) status = 1;
  } else if (check == "duality") {
    const auto d = bs_duality_check(G, alpha, {}, opt);
    json c;
    c["bs_count"] = d.bs_count;
    c["radial_dirichlet"] = d.radial_dirichlet;
    c["radial_dirichlet_at_zero"] = d.radial_dirichlet_at_zero;
    c["bs_near"] = d.bs_near;
    c["rd_uncertainty"] = d.rd_uncertainty;
    c["agrees"] = d.agrees;
    r["duality"] = c;
    if (!d.agrees) status = 1;
  }
  j["result"] = r;
  emit(j);
  return status;
}

int run_bounds(const Config& cfg, double alpha, double R, bool minR, double C, int K) {
  if (!(alpha > 0.0)) throw UsageError("--alpha must be > 0");
  if (!(R > 0.0)) throw UsageError("--R must be > 0");
  if (!(C >= 0.0)) throw UsageError("--C must be >= 0");
  const auto P = load_spec(cfg.spec);
  BoundOptions bo;
  bo.R = R;
  bo.C = C;
  bo.K = K;
  bo.quad = cfg.quad();
  json extra;
  extra["alpha"] = alpha;
  extra["R"] = R;
  extra["minR"] = minR;
  extra["C"] = C;
  extra["K"] = K;
  json j = report("bounds", cfg, extra, &P);
  const auto b = bound_report(P, alpha, bo);
  json r;
  r["J"] = integral_json(b.J);
  r["logweight_R"] = integral_json(b.logweight_R);
  r["logweight_1"] = integral_json(b.logweight_1);
  r["quasinorm_window"] = num(b.quasinorm);
  r["chad"] = num(b.chad);
  if (minR) {
    json m;
    m["value"] = num(b.chad_min.value);
    m["R"] = b.chad_min.R;
    r["chad_min_R"] = m;
  }
  r["chad_sharp"] = num(b.chad_sharp);
  r["lt_nonradial"] = num(b.lt_nonradial);
  r["weak"] = num(b.weak);
  r["weak_note"] = b.weak_note;
  j["result"] = r;
  emit(j);
  return 0;
}

int run_sweep(const Config& cfg, double a_min, double a_max, int per_decade, const std::string& csv,
              const std::string& json_out, double budget, double C, int K) {
  std::vector<double> grid;
  try {
    grid = alpha_grid(a_min, a_max, per_decade);
  } catch (const radial2d::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto P = load_spec(cfg.spec);
  SweepOptions so;
  so.channels = cfg.channels();
  so.C = C;
  so.K = K;
  so.budget_seconds = budget;
  so.quad = cfg.quad();
  const auto T = sweep(P, grid, so);
  const auto seq = classify(zeta_sequence(to_log(P, cfg.tail_tol, cfg.quad()), K));
  json extra;
  extra["alpha_min"] = a_min;
  extra["alpha_max"] = a_max;
  extra["per_decade"] = per_decade;
  extra["budget_seconds"] = budget;
  extra["C"] = C;
  extra["K"] = K;
  json j = report("sweep", cfg, extra, &P);
  json r;
  r["J"] = T.J;
  r["weyl_coefficient"] = T.weyl;
  json rows = json::array();
  for (const auto& row : T.rows) {
    json e;
    e["alpha"] = row.alpha;
    e["N"] = row.N;
    e["N_over_alpha"] = row.N_over_alpha;
    e["N_radial_dirichlet"] = row.radial_dirichlet;
    e["N_nonradial"] = row.nonradial;
    e["chad"] = num(row.chad);
    e["chad_sharp"] = num(row.chad_sharp);
    e["lt_nonradial"] = num(row.lt_nonradial);
    e["weak_bound"] = num(row.weak);
    e["uncertainty"] = row.uncertainty;
    e["sandwich"] = row.sandwich;
    e["violations"] = row.violations;
    rows.push_back(e);
  }
  r["rows"] = rows;
  r["skipped_alphas"] = T.skipped;
  r["ratio_deltas"] = T.ratio_deltas;
  r["monotone_counts"] = T.monotone_counts;
  r["sandwich_violations"] = T.sandwich_violations;
  r["bound_violations"] = T.bound_violations;
  if (!T.rows.empty()) {
    const auto w = weyl_verdict(T, seq);
    json wv;
    wv["verdict"] = w.verdict;
    wv["status"] = to_string(w.status);
    wv["limsup_window"] = w.window.upper;
    wv["liminf_window"] = w.window.lower;
    wv["ratios_converge"] = w.ratios_converge;
    wv["tol"] = w.tol;
    wv["note"] = w.note;
    r["weyl"] = wv;
  }
  j["result"] = r;
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw UsageError("cannot write " + csv);
    write_csv(out, T);
  }
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) throw UsageError("cannot write " + json_out);
    out << j.dump(2) << '\n';
  }
  emit(j);
  return T.sandwich_violations + T.bound_violations > 0 ? 1 : 0;
}

// Invariant and audit suite for one potential.
int run_verify(const Config& cfg, std::vector<double> alphas, int instances, std::uint64_t seed) {
  if (instances < 0) throw UsageError("--instances must be >= 0");
  for (double a : alphas)
    if (!(a > 0.0)) throw UsageError("--alpha values must be > 0");
  const auto P = load_spec(cfg.spec);
  const auto G = to_log(P, cfg.tail_tol, cfg.quad());
  const auto opt = cfg.channels();
  json extra;
  extra["alphas"] = alphas;
  extra["instances"] = instances;
  extra["seed"] = seed;
  json j = report("verify", cfg, extra, &P);
  json checks = json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool ok, json details) {
    json c;
    c["name"] = name;
    c["passed"] = ok;
    c["details"] = std::move(details);
    checks.push_back(c);
    all = all && ok;
  };

  const auto J = integral_J(P, cfg.quad());
  const auto lw = integral_logweight(P, 1.0, cfg.quad());
  const double mass = integrate_g(G.profile(), 0, 0.0, -kInf, kInf, cfg.quad()).value;
  const auto first_moment = integrate_g(G.profile(), 1, 0.0, 0.0, kInf, cfg.quad());

  // Pruefer against FD on random (alpha, E, mode)
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const BoundaryMode modes[] = {BoundaryMode::whole_line, BoundaryMode::half_line_dirichlet,
                                  BoundaryMode::whole_line_dirichlet_at_0};
    int agree = 0, flagged = 0, bad = 0;
    json fails = json::array();
    for (int i = 0; i < instances; ++i) {
      const double a = std::pow(10.0, 3.0 * u(rng));
      const double scale = a * G.max_value();
      const double E = -(scale > 0.0 ? scale : 1.0) * std::pow(10.0, -4.0 * u(rng));
      const auto mode = modes[static_cast<int>(3.0 * u(rng)) % 3];
      const auto p = count_below_pruefer(G, a, E, mode, opt.pruefer);
      const auto f = count_below_fd(G, a, E, mode, opt.fd);
      const bool near = p.near_threshold || f.near_threshold;
      const bool ok = near ? std::abs(p.count - f.count) <= p.uncertainty + f.uncertainty : p.count == f.count;
      if (near) ++flagged;
      if (ok) {
        ++agree;
      } else {
        ++bad;
        json e;
        e["alpha"] = a;
        e["energy"] = E;
        e["mode"] = std::string(to_string(mode));
        e["pruefer"] = p.count;
        e["fd"] = f.count;
        fails.push_back(e);
      }
    }
    json d;
    d["instances"] = instances;
    d["agree"] = agree;
    d["flagged"] = flagged;
    d["failures"] = fails;
    add("oracle_equivalence", bad == 0, d);
  }

  for (double a : alphas) {
    const auto b = total_count(G, a, opt);
    const auto s = sandwich_check(b);
    json sd;
    sd["alpha"] = a;
    sd["lower"] = s.lower;
    sd["total"] = s.total;
    sd["upper"] = s.upper;
    add("sandwich", s.holds, sd);

    const auto du = bs_duality_check(G, a, {}, opt);
    json dd;
    dd["alpha"] = a;
    dd["bs_count"] = du.bs_count;
    dd["radial_dirichlet"] = du.radial_dirichlet;
    dd["bs_near"] = du.bs_near;
    dd["rd_uncertainty"] = du.rd_uncertainty;
    add("duality", du.agrees, dd);

    const double cs = bound_chad_sharp(a, J, lw), c1 = bound_chad(a, J, lw), lt = bound_lt_nonradial(a, J);
    json bd;
    bd["alpha"] = a;
    bd["N"] = b.total;
    bd["nonradial"] = b.nonradial;
    bd["chad_sharp"] = num(cs);
    bd["chad"] = num(c1);
    bd["lt_nonradial"] = num(lt);
    const bool bounds_ok = static_cast<double>(b.total) <= cs + b.uncertainty && cs <= c1 &&
                           static_cast<double>(b.nonradial) <= lt + b.uncertainty;
    add("bounds", bounds_ok, bd);

    const double eps = threshold_epsilon(G, a, cfg.eps_rel);
    const auto ev = eigenvalues_below(G, a, -eps, 1u << 20, BoundaryMode::whole_line, cfg.eig_tol, opt.pruefer);
    double sum = 0.0;
    for (double mu : ev.mu) sum += std::sqrt(mu);
    json ld;
    ld["alpha"] = a;
    ld["sum_sqrt_mu"] = sum;
    ld["bound"] = 0.5 * a * mass;
    add("lieb_thirring", sum <= 0.5 * a * mass * (1.0 + 1e-9), ld);

    const auto hl = count_below_pruefer(G, a, -eps, BoundaryMode::half_line_dirichlet, opt.pruefer);
    const double bb = first_moment.finite ? a * first_moment.value : kInf;
    json gd;
    gd["alpha"] = a;
    gd["count"] = hl.count;
    gd["bound"] = num(bb);
    add("bargmann", static_cast<double>(hl.count) <= bb + hl.uncertainty, gd);

    json ed;
    ed["alpha"] = a;
    ed["engine_disagreements"] = b.engine_disagreements;
    add("channel_monotone", [&] {
      for (std::size_t m = 1; m < b.per_channel.size(); ++m)
        if (b.per_channel[m].count > b.per_channel[m - 1].count + b.per_channel[m].uncertainty) return false;
      return true;
    }(), ed);
  }
  json r;
  r["checks"] = checks;
  r["passed"] = all;
  j["result"] = r;
  emit(j);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-state counts and weak-l1 classification for radial 2D potentials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Config cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec, "potential spec file (JSON)")->required();
    sub->add_option("--quad-abs", cfg.quad_abs, "quadrature absolute tolerance");
    sub->add_option("--quad-rel", cfg.quad_rel, "quadrature relative tolerance");
    sub->add_option("--tail-tol", cfg.tail_tol, "mass allowed outside the log window");
    sub->add_option("--eps-rel", cfg.eps_rel, "threshold epsilon relative to alpha max G");
    sub->add_option("--eig-tol", cfg.eig_tol, "eigenvalue bisection tolerance");
    sub->add_option("--pruefer-eta", cfg.pruefer_eta, "Pruefer cell tolerance");
    sub->add_option("--fd-factor", cfg.fd_factor, "FD grid factor h*sqrt(alpha G)");
    sub->add_option("--threads", cfg.threads, "worker threads (0: RADIAL2D_THREADS or hardware)");
  };

  auto* pot = app.add_subcommand("potential", "inspect a potential");
  pot->require_subcommand(1);
  auto* show = pot->add_subcommand("show", "support and log window");
  common(show);
  double R = 1.0;
  auto* integ = pot->add_subcommand("integrals", "J(F) and the log-weighted integral");
  common(integ);
  integ->add_option("--R", R, "centre of the log weight");

  auto* seq = app.add_subcommand("seq", "block sequence and weak-l1 verdict");
  common(seq);
  int K = 200;
  bool seq_json = false;
  seq->add_option("--K", K, "number of blocks");
  seq->add_flag("--json", seq_json, "include the full sequence");

  auto* c1d = app.add_subcommand("count1d", "eigenvalues of -d^2/dt^2 - alpha G below E");
  common(c1d);
  double alpha = 0.0;
  std::string energy = "0-", mode = "whole-line", method = "pruefer";
  c1d->add_option("--alpha", alpha, "coupling")->required();
  c1d->add_option("--energy", energy, "threshold E (a number, or 0- for -epsilon)");
  c1d->add_option("--mode", mode, "whole-line | half-line-dirichlet | whole-line-dirichlet-at-0");
  c1d->add_option("--method", method, "pruefer | fd | both")->check(CLI::IsMember({"pruefer", "fd", "both"}));

  auto* cnt = app.add_subcommand("count", "2D count by angular channels");
  common(cnt);
  bool breakdown = false;
  std::string check;
  cnt->add_option("--alpha", alpha, "coupling")->required();
  cnt->add_flag("--breakdown", breakdown, "list the channel counts");
  cnt->add_option("--check", check, "sandwich | duality")->check(CLI::IsMember({"sandwich", "duality"}));

  auto* bnd = app.add_subcommand("bounds", "closed-form upper bounds");
  common(bnd);
  bool minR = false;
  double C = 1.0;
  bnd->add_option("--alpha", alpha, "coupling")->required();
  auto* r_opt = bnd->add_option("--R", R, "centre of the log weight");
  bnd->add_flag("--minR", minR, "also minimize over a geometric R grid")->excludes(r_opt);
  bnd->add_option("--C", C, "constant of the weak-l1 bound (not the optimal one)");
  bnd->add_option("--K", K, "number of blocks for the quasinorm");

  auto* swp = app.add_subcommand("sweep", "counts and bounds over a geometric alpha grid");
  common(swp);
  double a_min = 10.0, a_max = 1000.0, budget = 0.0;
  int per_decade = 6;
  std::string csv, json_out;
  swp->add_option("--alpha-min", a_min, "smallest coupling");
  swp->add_option("--alpha-max", a_max, "largest coupling");
  swp->add_option("--per-decade", per_decade, "grid points per decade");
  swp->add_option("--csv", csv, "CSV output path");
  swp->add_option("--json", json_out, "JSON output path");
  swp->add_option("--budget-seconds", budget, "stop starting rows after this many seconds (0: no cap)");
  swp->add_option("--C", C, "constant of the weak-l1 bound");
  swp->add_option("--K", K, "number of blocks for the quasinorm");

  auto* ver = app.add_subcommand("verify", "run the invariant and audit suite");
  common(ver);
  std::vector<double> alphas{1.0, 10.0, 100.0};
  int instances = 20;
  std::uint64_t seed = 20240101;
  ver->add_option("--alpha", alphas, "couplings for the channel checks");
  ver->add_option("--instances", instances, "random Pruefer/FD instances");
  ver->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.validate();
    if (show->parsed()) return run_potential_show(cfg);
    if (integ->parsed()) return run_potential_integrals(cfg, R);
    if (seq->parsed()) return run_seq(cfg, K, seq_json);
    if (c1d->parsed()) return run_count1d(cfg, alpha, energy, mode, method);
    if (cnt->parsed()) return run_count(cfg, alpha, breakdown, check);
    if (bnd->parsed()) return run_bounds(cfg, alpha, R, minR, C, K);
    if (swp->parsed()) return run_sweep(cfg, a_min, a_max, per_decade, csv, json_out, budget, C, K);
    if (ver->parsed()) return run_verify(cfg, alphas, instances, seed);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const invalid_potential& e) {
    std::cerr << "invalid potential: " << e.what() << '\n';
    return 2;
  } catch (const radial2d::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
