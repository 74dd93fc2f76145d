#ifndef RADIAL2D_ASYMPTOTICS_HPP
#define RADIAL2D_ASYMPTOTICS_HPP

// Coupling sweeps: N/alpha against the Weyl coefficient J/2, finite-alpha
// surrogates for limsup/liminf, and the link between the block sequence and
// the decay of n lambda_n.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "radial2d/bounds.hpp"
#include "radial2d/channels.hpp"
#include "radial2d/weakseq.hpp"

namespace radial2d {

struct SweepRow {
  double alpha = 0.0;
  long N = 0;
  double N_over_alpha = 0.0;
  int radial_dirichlet = 0;
  long nonradial = 0;
  double chad = kInf;  // R = 1
  double chad_sharp = kInf;
  double lt_nonradial = kInf;
  double weak = kInf;
  int uncertainty = 0;
  int engine_disagreements = 0;
  bool sandwich = false;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
};

struct SweepOptions {
  ChannelOptions channels{};
  double C = 1.0;
  int K = 200;
  /// Rows are started only while the elapsed time is below this (0: no cap).
  double budget_seconds = 0.0;
  QuadOptions quad{};
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<double> skipped;  // grid points not started because of the budget
  double J = 0.0;
  bool J_finite = true;
  double quasinorm = 0.0;
  double weyl = 0.0;
  std::vector<double> ratio_deltas;  // N/alpha differences of successive rows
  bool monotone_counts = true;
  int sandwich_violations = 0;
  int bound_violations = 0;
  double seconds = 0.0;
};

/// Geometric grid with per_decade points per factor 10, from a_min up to a_max inclusive.
inline std::vector<double> alpha_grid(double a_min, double a_max, int per_decade) {
  if (!(a_min > 0.0) || !(a_max >= a_min) || per_decade < 1)
    throw invalid_argument("alpha grid: need 0 < alpha-min <= alpha-max and per-decade >= 1");
  const int steps = static_cast<int>(std::floor(per_decade * std::log10(a_max / a_min) + 1e-9));
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(a_min * std::pow(10.0, static_cast<double>(i) / per_decade));
  if (a_max / g.back() > 1.0 + 1e-9) g.push_back(a_max);
  return g;
}

/// J(F)/2, the limit of N/alpha under the Weyl law.
inline double weyl_coefficient(const RadialPotential& P, const QuadOptions& opt = {}) {
  const auto J = integral_J(P, opt);
  return J.finite ? 0.5 * J.value : kInf;
}

inline SweepTable sweep(const RadialPotential& P, std::vector<double> alphas, const SweepOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  std::sort(alphas.begin(), alphas.end());
  SweepTable T;
  const auto J = integral_J(P, opt.quad);
  if (!J.finite) throw non_integrable("sweep: the integral of rF(r) diverges");
  const auto lw = integral_logweight(P, 1.0, opt.quad);
  const auto G = to_log(P);
  T.J = J.value;
  T.weyl = 0.5 * J.value;
  T.quasinorm = quasinorm_weak(zeta_sequence(G, opt.K).values);
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  for (double a : alphas) {
    if (opt.budget_seconds > 0.0 && elapsed() >= opt.budget_seconds) {
      T.skipped.push_back(a);
      continue;
    }
    const auto b = total_count(G, a, opt.channels);
    SweepRow r;
    r.alpha = a;
    r.N = b.total;
    r.N_over_alpha = static_cast<double>(b.total) / a;
    r.radial_dirichlet = b.radial_dirichlet;
    r.nonradial = b.nonradial;
    r.chad = bound_chad(a, J, lw);
    r.chad_sharp = bound_chad_sharp(a, J, lw);
    r.lt_nonradial = bound_lt_nonradial(a, J);
    r.weak = bound_weak(a, J, T.quasinorm, opt.C);
    r.uncertainty = b.uncertainty;
    r.engine_disagreements = b.engine_disagreements;
    r.sandwich = sandwich_check(b).holds;
    r.warnings = b.warnings;
    auto check = [&](bool ok, const std::string& what) {
      if (!ok) r.violations.push_back(what);
    };
    check(static_cast<double>(r.N) <= r.chad_sharp, "N > chad_sharp");
    check(r.chad_sharp <= r.chad, "chad_sharp > chad(R=1)");
    check(static_cast<double>(r.nonradial) <= r.lt_nonradial, "nonradial > alpha J");
    if (!r.sandwich) ++T.sandwich_violations;
    T.bound_violations += static_cast<int>(r.violations.size());
    T.rows.push_back(std::move(r));
  }
  for (std::size_t i = 1; i < T.rows.size(); ++i) {
    T.ratio_deltas.push_back(T.rows[i].N_over_alpha - T.rows[i - 1].N_over_alpha);
    if (T.rows[i].N < T.rows[i - 1].N) T.monotone_counts = false;
  }
  T.seconds = elapsed();
  return T;
}

struct LimitEstimates {
  double upper = 0.0;  // max N/alpha over the window
  double lower = 0.0;  // min N/alpha over the window
  std::size_t first = 0, last = 0;  // row indices, inclusive
};

/// Window extremes of N/alpha over rows [first, last].
inline LimitEstimates limit_estimates(const SweepTable& T, std::size_t first, std::size_t last) {
  if (T.rows.empty() || first > last || last >= T.rows.size())
    throw invalid_argument("limit_estimates: row window outside the table");
  LimitEstimates e{0.0, kInf, first, last};
  for (std::size_t i = first; i <= last; ++i) {
    e.upper = std::max(e.upper, T.rows[i].N_over_alpha);
    e.lower = std::min(e.lower, T.rows[i].N_over_alpha);
  }
  return e;
}

/// Window over the top half-decade of the computed couplings.
inline LimitEstimates limit_estimates(const SweepTable& T) {
  if (T.rows.empty()) throw invalid_argument("limit_estimates: empty table");
  const std::size_t last = T.rows.size() - 1;
  const double cut = T.rows[last].alpha / std::sqrt(10.0);
  std::size_t first = last;
  while (first > 0 && T.rows[first - 1].alpha >= cut * (1.0 - 1e-12)) --first;
  return limit_estimates(T, first, last);
}

enum class WeylStatus { consistent, tension, sequence_only };

inline const char* to_string(WeylStatus s) {
  switch (s) {
    case WeylStatus::consistent: return "consistent";
    case WeylStatus::tension: return "tension";
    case WeylStatus::sequence_only: return "sequence-only";
  }
  return "?";
}

struct WeylVerdict {
  std::string verdict;  // always the block-sequence verdict
  WeylStatus status = WeylStatus::sequence_only;
  double weyl = 0.0;
  LimitEstimates window;
  bool ratios_converge = false;
  double tol = 0.0;
  std::string note;
};

/// Sweep evidence set against the sequence criterion; the sequence verdict is never overridden.
inline WeylVerdict weyl_verdict(const SweepTable& T, const WeakVerdict& seq, double tol = 0.02) {
  WeylVerdict v;
  v.verdict = seq.verdict;
  v.weyl = T.weyl;
  v.tol = tol;
  if (T.rows.empty()) {
    v.note = "no sweep rows";
    return v;
  }
  v.window = limit_estimates(T);
  v.ratios_converge = std::abs(v.window.upper - T.weyl) <= tol && std::abs(v.window.lower - T.weyl) <= tol;
  const Tri c = seq.in_weak_circle;
  if (seq.in_weak == Tri::no) {
    v.status = v.ratios_converge ? WeylStatus::tension : WeylStatus::consistent;
    v.note = v.ratios_converge ? "N/alpha stays near J/2 although the sequence is not in weak-l1"
                               : "N/alpha away from J/2";
  } else if (c == Tri::yes) {
    v.status = v.ratios_converge ? WeylStatus::consistent : WeylStatus::tension;
    v.note = v.ratios_converge ? "N/alpha within tol of J/2 over the top half-decade"
                               : "sequence criterion gives the Weyl law but N/alpha is not yet within tol of J/2";
  } else if (c == Tri::no) {
    if (v.window.upper > T.weyl + tol) {
      v.status = WeylStatus::consistent;
      v.note = "excess of N/alpha over J/2 visible at the computed couplings";
    } else {
      v.status = WeylStatus::sequence_only;
      v.note = "excess over J/2 not resolved at the computed couplings; verdict rests on the sequence";
    }
  } else {
    v.status = WeylStatus::sequence_only;
    v.note = "sequence verdict inconclusive";
  }
  return v;
}

struct DeltaLink {
  Tri delta_zero = Tri::inconclusive;  // window Delta_1 of the block sequence is 0
  std::size_t n_first = 0, n_last = 0;
  std::vector<double> n_lambda;  // n lambda_n for n = 1..n_last
  double head = 0.0;  // mean of n lambda_n over the first quarter of the window
  double tail = 0.0;  // mean over the last quarter
  double ratio = 0.0;  // tail / head
  bool tested = false;
  bool holds = true;
};

struct DeltaLinkOptions {
  std::size_t n_first = 8;
  std::size_t n_last = 64;
  /// tail/head of n lambda_n at or below this reads as decay to 0.
  double decay_ratio = 0.9;
  LogAxisGrid grid{};
};

/// Zero window Delta_1 of the blocks implies n lambda_n decaying over the
/// window; a nonzero one implies it does not.
inline DeltaLink delta_link(const LogPotential& G, const WeakVerdict& seq, const DeltaLinkOptions& opt = {}) {
  if (opt.n_first < 1 || opt.n_last < opt.n_first + 3) throw invalid_argument("delta_link: window too short");
  DeltaLink d;
  d.n_first = opt.n_first;
  d.n_last = opt.n_last;
  d.delta_zero = seq.in_weak_circle == Tri::yes ? Tri::yes : seq.in_weak_circle == Tri::no ? Tri::no : Tri::inconclusive;
  const auto lam = bs_spectrum_log_axis(G, opt.n_last, opt.grid);
  for (std::size_t n = 1; n <= lam.size(); ++n) d.n_lambda.push_back(static_cast<double>(n) * lam[n - 1]);
  const std::size_t q = std::max<std::size_t>(1, (opt.n_last - opt.n_first + 1) / 4);
  for (std::size_t n = opt.n_first; n < opt.n_first + q; ++n) d.head += d.n_lambda[n - 1] / static_cast<double>(q);
  for (std::size_t n = opt.n_last + 1 - q; n <= opt.n_last; ++n) d.tail += d.n_lambda[n - 1] / static_cast<double>(q);
  if (d.head == 0.0) {
    d.ratio = 0.0;
    d.tested = d.delta_zero == Tri::yes;
    d.holds = d.delta_zero != Tri::no;
    return d;
  }
  d.ratio = d.tail / d.head;
  if (d.delta_zero == Tri::yes) {
    d.tested = true;
    d.holds = d.ratio <= opt.decay_ratio;
  } else if (d.delta_zero == Tri::no) {
    d.tested = true;
    d.holds = d.ratio > opt.decay_ratio && d.tail > 0.0;
  }
  return d;
}

/// Empirical constant over potentials and couplings, counting every pair.
inline double empirical_constant(const std::vector<RadialPotential>& potentials, const std::vector<double>& alphas,
                                 int K = 200, const ChannelOptions& opt = {}) {
  std::vector<CountSample> samples;
  for (const auto& P : potentials) {
    const auto J = integral_J(P);
    if (!J.finite) continue;
    const auto G = to_log(P);
    const double q = quasinorm_weak(zeta_sequence(G, K).values);
    for (double a : alphas) samples.push_back({a, total_count(G, a, opt).total, J.value, q});
  }
  return empirical_constant(samples);
}

inline const char* const kSweepCsvHeader =
    "alpha,N,N_over_alpha,N_radial_dirichlet,N_nonradial,chad,chad_sharp,lt_nonradial,weak_bound";

inline std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const SweepTable& T) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : T.rows) {
    os << csv_number(r.alpha) << ',' << r.N << ',' << csv_number(r.N_over_alpha) << ',' << r.radial_dirichlet << ','
       << r.nonradial << ',' << csv_number(r.chad) << ',' << csv_number(r.chad_sharp) << ','
       << csv_number(r.lt_nonradial) << ',' << csv_number(r.weak) << '\n';
  }
}

}  // namespace radial2d

#endif  // RADIAL2D_ASYMPTOTICS_HPP
