#ifndef RADIAL2D_WEAKSEQ_HPP
#define RADIAL2D_WEAKSEQ_HPP

// Dyadic-block sequence of a log potential and weak-l1 analytics.
//
// Block k >= 1 covers |t| in (e^{k-1}, e^k); block 0 is [-1, 1]. Block
// integrals are evaluated in s = ln|t| so that blocks far out (t ~ e^200)
// stay representable.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "radial2d/errors.hpp"
#include "radial2d/potential.hpp"

namespace radial2d {

enum class Tri { no, yes, inconclusive };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ZetaSequence {
  std::vector<double> values;  // k = 0..K
  int K = 0;
  /// Blocks K+1..K+kProbeBlocks, used to certify ranks and describe the tail.
  std::vector<double> probe;
  std::string tail_note;
};

inline constexpr int kProbeBlocks = 4;

namespace detail {

// int over |t| in (e^{k-1}, e^k) of |t|^power G(t) dt, both signs of t.
inline quad::Result dyadic_block(const Profile& prof, int k, int power, const quad::Tolerance& tol) {
  quad::Result out;
  const double s0 = k - 1.0, s1 = k;
  for (int sign : {1, -1}) {
    // support of this side in s = ln|t|
    double lo = s0, hi = s1;
    const double plo = prof.lo(), phi = prof.hi();
    if (sign > 0) {
      if (!(phi > 0.0)) continue;
      if (plo > 0.0) lo = std::max(lo, std::log(plo));
      if (std::isfinite(phi)) hi = std::min(hi, std::log(phi));
    } else {
      if (!(plo < 0.0)) continue;
      if (phi < 0.0) lo = std::max(lo, std::log(-phi));
      if (std::isfinite(plo)) hi = std::min(hi, std::log(-plo));
    }
    if (!(hi > lo)) continue;
    std::vector<double> pts{lo};
    for (double b : prof.breaks()) {
      if (b * sign <= 0.0) continue;
      const double sb = std::log(std::abs(b));
      if (sb > lo && sb < hi) pts.push_back(sb);
    }
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    auto f = [&](double s) {
      double lg;
      if (sign > 0) {
        lg = prof.log_g_log_t(s);
      } else {
        if (s > 700.0) return 0.0;
        lg = prof.log_g(-std::exp(s));
      }
      if (lg == -kInf) return 0.0;
      return std::exp((power + 1.0) * s + lg);
    };
    out += quad::integrate_pieces(f, pts, tol);
  }
  return out;
}

inline double checked_block(const Profile& prof, int k, int power, const quad::Tolerance& tol) {
  quad::Result r;
  if (k == 0) {
    auto v = integrate_g(prof, 0, 0.0, -1.0, 1.0, QuadOptions{tol});
    r.value = v.value;
    r.error = v.error;
    r.converged = v.converged;
  } else {
    r = dyadic_block(prof, k, power, tol);
  }
  if (!std::isfinite(r.value) || (!r.converged && r.error > 1e3 * std::max(tol.abs, tol.rel * std::abs(r.value))))
    throw quadrature_failure("block " + std::to_string(k) + " integral did not converge (G not integrable there)");
  return std::max(0.0, r.value);
}

}  // namespace detail

/// int over |t| in (e^{k-1}, e^k) of G (the unweighted block mass); k = 0 gives int_{-1}^{1} G.
inline double block_mass(const LogPotential& G, int k, const quad::Tolerance& tol = {1e-13, 1e-10, 4000}) {
  return detail::checked_block(G.profile(), k, 0, tol);
}

/// zeta_0 = int_{-1}^{1} G, zeta_k = int_{|t| in (e^{k-1}, e^k)} |t| G(t) dt.
inline ZetaSequence zeta_sequence(const LogPotential& G, int K, const quad::Tolerance& tol = {1e-13, 1e-10, 4000}) {
  if (K < 1) throw invalid_argument("zeta_sequence: K must be >= 1");
  ZetaSequence z;
  z.K = K;
  z.values.resize(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) z.values[static_cast<std::size_t>(k)] = detail::checked_block(G.profile(), k, 1, tol);
  for (int k = K + 1; k <= K + kProbeBlocks; ++k) z.probe.push_back(detail::checked_block(G.profile(), k, 1, tol));

  std::ostringstream note;
  note.precision(6);
  const double pmax = *std::max_element(z.probe.begin(), z.probe.end());
  if (pmax == 0.0) {
    note << "blocks " << K + 1 << ".." << K + kProbeBlocks << " vanish";
  } else {
    double kz = 0.0;
    for (int i = 0; i < kProbeBlocks; ++i) kz = std::max(kz, (K + 1.0 + i) * z.probe[static_cast<std::size_t>(i)]);
    const double ratio = z.probe.back() / z.probe.front();
    note << "blocks " << K + 1 << ".." << K + kProbeBlocks << ": max k*zeta_k = " << kz
         << ", zeta_" << K + kProbeBlocks << "/zeta_" << K + 1 << " = " << ratio;
  }
  z.tail_note = note.str();
  return z;
}

/// Non-increasing rearrangement of |x_n|.
inline std::vector<double> rearrange(std::vector<double> x) {
  for (auto& v : x) v = std::abs(v);
  std::sort(x.begin(), x.end(), std::greater<>());
  return x;
}

/// max_n n x*_n, n 1-based.
inline double quasinorm_weak(const std::vector<double>& x) {
  const auto r = rearrange(x);
  double q = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) q = std::max(q, static_cast<double>(i + 1) * r[i]);
  return q;
}

inline double ell1_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

struct DeltaWindow {
  double upper = 0.0;
  double lower = 0.0;
};

/// max and min of n x*_n for n in [first, last] (1-based, inclusive).
inline DeltaWindow delta_estimates(const std::vector<double>& x, std::size_t first, std::size_t last) {
  if (first < 1 || last < first || last > x.size())
    throw invalid_argument("delta_estimates: window [" + std::to_string(first) + ", " + std::to_string(last) +
                           "] is empty or outside 1.." + std::to_string(x.size()));
  const auto r = rearrange(x);
  DeltaWindow d{0.0, kInf};
  for (std::size_t n = first; n <= last; ++n) {
    const double v = static_cast<double>(n) * r[n - 1];
    d.upper = std::max(d.upper, v);
    d.lower = std::min(d.lower, v);
  }
  return d;
}

struct ClassifyTolerances {
  /// Growth of the running sup of n x*_n, as a fraction of its value, accepted as stable.
  double sup_stable = 0.01;
  /// e2/e1 below this: increments shrink geometrically (bounded); at or above sup_growing: unbounded.
  double sup_shrinking = 0.8;
  double sup_growing = 0.95;
  /// Tail sup below this fraction of the head sup counts as zero.
  double tail_zero = 1e-6;
  /// Tail sup decrements below this fraction of the tail sup count as a floor.
  double tail_floor = 0.02;
  /// Extrapolated tail limit L: <= to_zero * T(p1) means o(1/n), >= floor_frac * T(p3) means a positive floor.
  double to_zero = 0.05;
  double floor_frac = 0.5;
};

struct WeakEvidence {
  std::size_t certified = 0;  // ranks whose position is not affected by blocks beyond K
  double tail_bound = 0.0;    // largest probe block
  std::size_t p1 = 0, p2 = 0, p3 = 0;
  double M1 = 0, M2 = 0, M3 = 0;  // running sup of n x*_n up to p1, p2, N
  double T1 = 0, T2 = 0, T3 = 0;  // sup of n x*_n over [p_i, N]
  double extrapolated_floor = 0.0;
  std::string note;
};

struct WeakVerdict {
  Tri in_weak = Tri::inconclusive;
  Tri in_weak_circle = Tri::inconclusive;
  double quasinorm_window = 0.0;
  double delta_upper_window = 0.0;
  double delta_lower_window = 0.0;
  std::size_t delta_first = 0, delta_last = 0;
  WeakEvidence evidence;
  std::string verdict;
};

inline std::string verdict_text(Tri in_weak, Tri in_circle) {
  if (in_weak == Tri::no) return "O(alpha) fails";
  if (in_weak == Tri::yes && in_circle == Tri::yes) return "O(alpha) holds, Weyl law holds";
  if (in_weak == Tri::yes && in_circle == Tri::no) return "O(alpha) holds, Weyl fails";
  return "inconclusive";
}

/// Tri-state membership of the block sequence in the weak-l1 space and its separable part.
inline WeakVerdict classify(const ZetaSequence& z, const ClassifyTolerances& tol = {}) {
  WeakVerdict v;
  auto& ev = v.evidence;
  const auto x = rearrange(z.values);
  v.quasinorm_window = quasinorm_weak(x);
  ev.tail_bound = z.probe.empty() ? 0.0 : *std::max_element(z.probe.begin(), z.probe.end());

  std::size_t N = 0;
  while (N < x.size() && x[N] > ev.tail_bound) ++N;
  ev.certified = N;

  auto finish = [&](Tri w, Tri c, std::string note) {
    v.in_weak = w;
    v.in_weak_circle = c;
    ev.note = std::move(note);
    v.verdict = verdict_text(w, c);
    if (N > 0) {
      v.delta_first = ev.p2 > 0 ? ev.p2 : 1;
      v.delta_last = N;
      auto d = delta_estimates(x, v.delta_first, v.delta_last);
      v.delta_upper_window = d.upper;
      v.delta_lower_window = d.lower;
    }
    return v;
  };

  if (ev.tail_bound == 0.0) {
    // every block beyond the probes is assumed to vanish as well
    return finish(Tri::yes, Tri::yes, "finitely supported sequence");
  }
  if (N < 16) return finish(Tri::inconclusive, Tri::inconclusive, "too few rank-certified entries; increase K");

  auto nx = [&](std::size_t n) { return static_cast<double>(n) * x[n - 1]; };
  const double Nd = static_cast<double>(N);
  ev.p1 = static_cast<std::size_t>(std::ceil(std::pow(Nd, 0.25)));
  ev.p2 = static_cast<std::size_t>(std::ceil(std::sqrt(Nd)));
  ev.p3 = static_cast<std::size_t>(std::ceil(Nd / 2));
  auto running_sup = [&](std::size_t last) {
    double m = 0.0;
    for (std::size_t n = 1; n <= last; ++n) m = std::max(m, nx(n));
    return m;
  };
  auto tail_sup = [&](std::size_t first) {
    double m = 0.0;
    for (std::size_t n = first; n <= N; ++n) m = std::max(m, nx(n));
    return m;
  };
  ev.M1 = running_sup(ev.p1);
  ev.M2 = running_sup(ev.p2);
  ev.M3 = running_sup(N);
  ev.T1 = tail_sup(ev.p1);
  ev.T2 = tail_sup(ev.p2);
  ev.T3 = tail_sup(ev.p3);

  Tri w;
  const double e1 = ev.M2 - ev.M1, e2 = ev.M3 - ev.M2;
  if (e2 <= tol.sup_stable * ev.M3) {
    w = Tri::yes;
  } else if (e1 > 0.0 && e2 / e1 < tol.sup_shrinking) {
    w = Tri::yes;
  } else if (e1 <= 0.0 || e2 / e1 >= tol.sup_growing) {
    w = Tri::no;
  } else {
    w = Tri::inconclusive;
  }

  Tri c;
  const double d1 = ev.T1 - ev.T2, d2 = ev.T2 - ev.T3;
  ev.extrapolated_floor = ev.T3;
  if (w == Tri::no) {
    c = Tri::no;  // l°_{1,inf} is a subspace of l_{1,inf}
  } else if (ev.T3 <= tol.tail_zero * ev.M1) {
    c = Tri::yes;
    ev.extrapolated_floor = 0.0;
  } else if (d2 <= tol.tail_floor * ev.T3) {
    c = Tri::no;
  } else if (d2 >= d1) {
    c = Tri::yes;  // decrements not shrinking along a geometric ladder
    ev.extrapolated_floor = 0.0;
  } else {
    const double q = d2 / d1;
    const double L = ev.T3 - d2 * q / (1.0 - q);
    ev.extrapolated_floor = L;
    if (L <= tol.to_zero * ev.T1) {
      c = Tri::yes;
    } else if (L >= tol.floor_frac * ev.T3) {
      c = Tri::no;
    } else {
      c = Tri::inconclusive;
    }
  }
  return finish(w, c, "rank ladder " + std::to_string(ev.p1) + "/" + std::to_string(ev.p2) + "/" +
                          std::to_string(ev.p3) + " over " + std::to_string(N) + " certified ranks");
}

}  // namespace radial2d

#endif  // RADIAL2D_WEAKSEQ_HPP
