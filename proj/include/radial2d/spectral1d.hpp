#ifndef RADIAL2D_SPECTRAL1D_HPP
#define RADIAL2D_SPECTRAL1D_HPP

// Eigenvalue counting for -d^2/dt^2 - alpha G(t) on the line or half-line.
//
// Two independent engines:
//  * pruefer: G is replaced by its average on adaptive cells, each cell is
//    solved exactly (trig / hyperbolic), and zeros of the shooting solution
//    are counted exactly per cell. Sturm oscillation turns zeros into counts.
//  * fd: 3-point finite differences on a (possibly graded) grid; the count is
//    the inertia of K - (alpha G + E) M from an LDL^T sweep.
// Both impose the exact exterior condition psi'/psi = +-kappa at the ends of
// the potential window, kappa = sqrt(-E), so no padding is needed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "radial2d/errors.hpp"
#include "radial2d/potential.hpp"

namespace radial2d {

enum class BoundaryMode { whole_line, half_line_dirichlet, whole_line_dirichlet_at_0 };

inline std::string_view to_string(BoundaryMode m) {
  switch (m) {
    case BoundaryMode::whole_line: return "whole-line";
    case BoundaryMode::half_line_dirichlet: return "half-line-dirichlet";
    case BoundaryMode::whole_line_dirichlet_at_0: return "whole-line-dirichlet-at-0";
  }
  return "?";
}

inline BoundaryMode parse_mode(std::string_view s) {
  for (auto m : {BoundaryMode::whole_line, BoundaryMode::half_line_dirichlet, BoundaryMode::whole_line_dirichlet_at_0})
    if (to_string(m) == s) return m;
  throw invalid_argument("unknown boundary mode '" + std::string(s) + "'");
}

enum class CountMethod { pruefer, fd_inertia };

inline std::string_view to_string(CountMethod m) { return m == CountMethod::pruefer ? "pruefer" : "fd-inertia"; }

/// epsilon of the E = 0^- convention: 1e-9 times the scale of alpha G.
inline double threshold_epsilon(const LogPotential& G, double alpha, double rel = 1e-9) {
  const double scale = alpha * G.max_value();
  return rel * (scale > 0.0 ? scale : 1.0);
}

struct Discretization {
  std::string kind;  // "cp-cells", "graded", "uniform"
  double t_lo = 0.0, t_hi = 0.0;
  std::size_t size = 0;  // cells or nodes
  double h_min = 0.0, h_max = 0.0;
  double band = 0.0;     // eigenvalue error band used for near-threshold flags
};

struct CountResult {
  int count = 0;
  CountMethod method = CountMethod::pruefer;
  BoundaryMode mode = BoundaryMode::whole_line;
  double energy = 0.0;
  double alpha = 0.0;
  std::vector<Discretization> discretization;  // two entries for the split Dirichlet-at-0 mode
  bool near_threshold = false;
  int uncertainty = 0;       // count(E + band) - count(E - band)
  bool pivot_shifted = false;
  std::vector<std::string> warnings;
};

namespace detail {

struct Interval {
  double a, b;
  bool dirichlet_left;
};

// Problem pieces: one interval, or the two halves for the Dirichlet-at-0 split
// (the left half is mirrored so both start with a Dirichlet node at 0).
struct Piece {
  const LogPotential* g;
  Interval iv;
};

inline Interval half_line_interval(const LogPotential& G) {
  const double hi = std::max(0.0, G.empty() ? 0.0 : G.t_max());
  return {0.0, hi, true};
}

inline Interval whole_line_interval(const LogPotential& G) {
  if (G.empty()) return {0.0, 0.0, false};
  return {G.t_min(), G.t_max(), false};
}

inline std::vector<double> knots(const LogPotential& G, const Interval& iv) {
  std::vector<double> k{iv.a, iv.b};
  // 0 is always a knot so the whole-line cells refine the two Dirichlet halves
  if (iv.a < 0.0 && iv.b > 0.0) k.push_back(0.0);
  if (!G.empty()) {
    for (double t : {G.t_min(), G.t_max()})
      if (t > iv.a && t < iv.b) k.push_back(t);
    for (double t : G.breaks())
      if (t > iv.a && t < iv.b) k.push_back(t);
  }
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

// G on a piece, honouring the one-sided value at a knot.
inline double g_inside(const LogPotential& G, double x, double toward) {
  return G(x == toward ? x : std::nextafter(x, toward));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constant-perturbation Pruefer engine

struct PrueferOptions {
  /// Cell acceptance: (max - min of alpha G on the cell) * h^2 <= eta.
  double eta = 1e-6;
  /// Screening band for near-threshold checks, relative to alpha max G + |E|.
  double band_rel = 1e-5;
  /// Eigenvalues in the screening band are compared against a mesh with eta / refine.
  double refine = 16.0;
  /// Flag when |e - E| <= safety * (estimated error of e).
  double safety = 10.0;
  std::size_t max_cells = 20'000'000;
};

namespace detail {

struct ThresholdCheck {
  bool near = false;
  int uncertainty = 0;
  double screen = 0.0;     // screening band
  double error_est = 0.0;  // largest error estimate of an eigenvalue inside the band
};

// Near-threshold test shared by both engines. coarse/fine count eigenvalues
// below an energy on the production and refined discretizations; err_factor
// converts |e_coarse - e_fine| into an error estimate of e_coarse.
template <class Coarse, class Fine>
ThresholdCheck threshold_check(const Coarse& coarse, const Fine& fine, double E, double screen, double err_factor,
                               double safety) {
  ThresholdCheck out;
  out.screen = screen;
  const double lo_e = E - screen, hi_e = std::min(0.0, E + screen);
  const int c_lo = coarse(lo_e), c_hi = coarse(hi_e);
  if (c_lo == c_hi) return out;
  const double res = 1e-13 * (std::abs(E) + screen) + 1e-300;
  // eigenvalues this close to E are ambiguous at working precision even for an exact engine
  const double floor = 1e-10 * (std::abs(E) + screen);
  // locate the k-th eigenvalue (1-based) of a counting function inside [a, b]
  auto locate = [&](const auto& count, int k, double a, double b) {
    if (count(a) >= k) return -kInf;
    if (count(b) < k) return kInf;
    while (b - a > res) {
      const double m = 0.5 * (a + b);
      if (!(m > a && m < b)) break;
      (count(m) >= k ? b : a) = m;
    }
    return 0.5 * (a + b);
  };
  for (int k = c_lo + 1; k <= c_hi; ++k) {
    const double ec = locate(coarse, k, lo_e, hi_e);
    const double ef = locate(fine, k, lo_e - screen, std::min(0.0, hi_e + screen));
    const double err = std::isfinite(ef) ? err_factor * std::abs(ec - ef) : kInf;
    out.error_est = std::max(out.error_est, err);
    if (std::abs(ec - E) <= safety * err + floor) {
      out.near = true;
      ++out.uncertainty;
    }
  }
  return out;
}

}  // namespace detail

/// Cells with their alpha G averages for one (G, alpha, interval); E-independent.
class CpMesh {
 public:
  CpMesh() = default;

  CpMesh(const LogPotential& G, double alpha, detail::Interval iv, const PrueferOptions& opt) : iv_(iv) {
    if (!(iv.b > iv.a)) return;
    const auto k = detail::knots(G, iv);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) initial_split(G, alpha, k[i], k[i + 1], opt);
    if (!x0_.empty()) {
      h_min_ = *std::min_element(h_.begin(), h_.end());
      h_max_ = *std::max_element(h_.begin(), h_.end());
    }
  }

  std::size_t size() const { return h_.size(); }
  double h_min() const { return h_min_; }
  double h_max() const { return h_max_; }
  const detail::Interval& interval() const { return iv_; }

  /// Zeros on the interval plus the exterior, for energy E <= 0.
  /// Equals the number of eigenvalues below E (Sturm oscillation).
  int count(double E) const {
    const double kappa = std::sqrt(std::max(0.0, -E));
    double p, dp;
    if (iv_.dirichlet_left) {
      p = 0.0;
      dp = 1.0;
    } else {
      p = 1.0;
      dp = kappa;
    }
    long zeros = 0;
    for (std::size_t i = 0; i < h_.size(); ++i) {
      const double q = ag_[i] + E;
      const double h = h_[i];
      double p1, dp1;
      if (q > 0.0) {
        const double k = std::sqrt(q);
        double phi = std::atan2(k * p, dp);
        if (phi < 0.0) phi += std::numbers::pi;
        if (phi >= std::numbers::pi) phi -= std::numbers::pi;
        zeros += static_cast<long>(std::floor((phi + k * h) / std::numbers::pi));
        const double c = std::cos(k * h), s = std::sin(k * h);
        p1 = p * c + dp * s / k;
        dp1 = -p * k * s + dp * c;
      } else if (q < 0.0) {
        const double kap = std::sqrt(-q);
        const double x = kap * h;
        // scaled by e^{-x}: cosh -> (1 + e^{-2x})/2, sinh -> (1 - e^{-2x})/2
        const double em = std::exp(-2.0 * x);
        const double ch = 0.5 * (1.0 + em), sh = 0.5 * (1.0 - em);
        if (p * dp < 0.0 && kap * std::abs(p) <= std::abs(dp) * (sh / ch)) ++zeros;
        p1 = p * ch + dp * sh / kap;
        dp1 = p * kap * sh + dp * ch;
      } else {
        if (p * dp < 0.0 && std::abs(p) <= std::abs(dp) * h) ++zeros;
        p1 = p + dp * h;
        dp1 = dp;
      }
      const double n = std::max(std::abs(p1), std::abs(dp1));
      if (n > 0.0 && std::isfinite(n)) {
        p = p1 / n;
        dp = dp1 / n;
      } else {
        throw step_control_failure("pruefer: solution lost finiteness in cell " + std::to_string(i));
      }
    }
    // decaying exterior beyond the right end: one more zero iff psi'/psi < -kappa
    if (p * dp < 0.0 && kappa * std::abs(p) < std::abs(dp)) ++zeros;
    return static_cast<int>(zeros);
  }

 private:
  void initial_split(const LogPotential& G, double alpha, double a, double b, const PrueferOptions& opt) {
    // geometric pieces on long stretches away from the origin, uniform otherwise
    std::vector<double> pts{a};
    if (a > 0.0 && b / a > 4.0) {
      const int n = static_cast<int>(std::ceil(std::log(b / a) / std::log(1.5)));
      for (int i = 1; i < n; ++i) pts.push_back(a * std::pow(b / a, static_cast<double>(i) / n));
    } else if (b < 0.0 && a / b > 4.0) {
      const int n = static_cast<int>(std::ceil(std::log(a / b) / std::log(1.5)));
      for (int i = 1; i < n; ++i) pts.push_back(a * std::pow(b / a, static_cast<double>(i) / n));
    } else {
      for (int i = 1; i < 16; ++i) pts.push_back(a + (b - a) * i / 16.0);
    }
    pts.push_back(b);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) refine(G, alpha, pts[i], pts[i + 1], a, b, opt);
  }

  void refine(const LogPotential& G, double alpha, double x0, double x1, double a, double b,
              const PrueferOptions& opt) {
    struct Job {
      double x0, x1;
    };
    std::vector<Job> stack{{x0, x1}};
    while (!stack.empty()) {
      const Job j = stack.back();
      stack.pop_back();
      const double h = j.x1 - j.x0;
      // one-sided samples at the piece ends
      const double g0 = alpha * (j.x0 == a ? detail::g_inside(G, a, b) : G(j.x0));
      const double g4 = alpha * (j.x1 == b ? detail::g_inside(G, b, a) : G(j.x1));
      const double g1 = alpha * G(j.x0 + 0.25 * h), g2 = alpha * G(j.x0 + 0.5 * h), g3 = alpha * G(j.x0 + 0.75 * h);
      const double lo = std::min({g0, g1, g2, g3, g4}), hi = std::max({g0, g1, g2, g3, g4});
      const bool tiny = h <= 1e-10 * std::max(1.0, std::abs(j.x0));
      if ((hi - lo) * h * h <= opt.eta || tiny) {
        if (x0_.size() >= opt.max_cells)
          throw step_control_failure("pruefer: more than " + std::to_string(opt.max_cells) + " cells required");
        x0_.push_back(j.x0);
        h_.push_back(h);
        // composite Simpson average over the two halves
        ag_.push_back(std::max(0.0, (g0 + 4.0 * g1 + 2.0 * g2 + 4.0 * g3 + g4) / 12.0));
      } else {
        const double m = 0.5 * (j.x0 + j.x1);
        stack.push_back({m, j.x1});
        stack.push_back({j.x0, m});
      }
    }
  }

  detail::Interval iv_{0.0, 0.0, false};
  std::vector<double> x0_, h_, ag_;
  double h_min_ = 0.0, h_max_ = 0.0;
};

/// Pruefer counting for a fixed (G, alpha, mode); reusable across energies.
class PrueferCounter {
 public:
  PrueferCounter(const LogPotential& G, double alpha, BoundaryMode mode, const PrueferOptions& opt = {})
      : mode_(mode), alpha_(alpha), scale_(alpha * G.max_value()), opt_(opt) {
    if (!(alpha > 0.0)) throw invalid_argument("alpha must be > 0");
    PrueferOptions fine = opt;
    fine.eta = opt.eta / opt.refine;
    auto add = [&](const LogPotential& g, detail::Interval iv) {
      meshes_.emplace_back(g, alpha, iv, opt);
      fine_.emplace_back(g, alpha, iv, fine);
    };
    switch (mode) {
      case BoundaryMode::whole_line: add(G, detail::whole_line_interval(G)); break;
      case BoundaryMode::half_line_dirichlet: add(G, detail::half_line_interval(G)); break;
      case BoundaryMode::whole_line_dirichlet_at_0: {
        add(G, detail::half_line_interval(G));
        mirror_ = std::make_shared<LogPotential>(G.mirrored());
        add(*mirror_, detail::half_line_interval(*mirror_));
        break;
      }
    }
  }

  int raw_count(double E) const { return sum(meshes_, E); }
  int refined_count(double E) const { return sum(fine_, E); }

  CountResult count(double E) const {
    CountResult r;
    r.method = CountMethod::pruefer;
    r.mode = mode_;
    r.energy = E;
    r.alpha = alpha_;
    r.count = raw_count(E);
    // CP error scales like eta^{2/3}
    const double ratio = std::pow(opt_.refine, 2.0 / 3.0);
    const auto chk = detail::threshold_check([&](double e) { return raw_count(e); },
                                             [&](double e) { return refined_count(e); }, E,
                                             opt_.band_rel * (scale_ + std::abs(E)), ratio / (ratio - 1.0),
                                             opt_.safety);
    if (chk.near) {
      r.near_threshold = true;
      r.uncertainty = chk.uncertainty;
      r.warnings.push_back(std::to_string(chk.uncertainty) + " eigenvalue(s) within the error estimate (" +
                           std::to_string(chk.error_est) + ") of E");
    }
    for (const auto& m : meshes_)
      r.discretization.push_back(
          {"cp-cells", m.interval().a, m.interval().b, m.size(), m.h_min(), m.h_max(), chk.screen});
    return r;
  }

 private:
  static int sum(const std::vector<CpMesh>& ms, double E) {
    if (E > 0.0 || std::isnan(E)) throw invalid_argument("energy must be <= 0 (use -epsilon for 0^-)");
    int n = 0;
    for (const auto& m : ms) n += m.count(E);
    return n;
  }

  BoundaryMode mode_;
  double alpha_, scale_;
  PrueferOptions opt_;
  std::shared_ptr<LogPotential> mirror_;
  std::vector<CpMesh> meshes_, fine_;
};

inline CountResult count_below_pruefer(const LogPotential& G, double alpha, double E, BoundaryMode mode,
                                       const PrueferOptions& opt = {}) {
  return PrueferCounter(G, alpha, mode, opt).count(E);
}

// ---------------------------------------------------------------------------
// Finite-difference inertia engine

struct FdGrid {
  /// > 0: uniform spacing (rounded to divide each interval); otherwise graded.
  double uniform_h = 0.0;
  /// graded: local h = factor / sqrt(max(alpha G, |E|)), neighbour ratio <= growth.
  double factor = 1.0 / 64.0;
  double growth = 1.05;
  /// Screening band multiplier on the local dispersion error h^2 k^4 / 12; also the flag safety factor.
  double band_safety = 4.0;
  std::size_t max_nodes = 50'000'000;
};

namespace detail {

struct FdSystem {
  std::vector<double> x;  // nodes
  std::vector<double> gm;  // alpha * (lumped integral of G against the hat function)
  std::vector<double> m;   // lumped mass
  double h_min = 0.0, h_max = 0.0, band = 0.0;
};

// Left-to-right node generation. Past the last interior knot and after the
// potential has been active (alpha G > 1e-3 |E|), once alpha G has stayed
// below 1e-3 |E| for 40 decay lengths 1/sqrt(-E) the grid stops: the exterior
// condition is imposed there, and the neglected potential is a tiny
// perturbation on a solution that has decayed by e^{-40}.
inline std::vector<double> fd_nodes_forward(const LogPotential& G, double alpha, double E, const Interval& iv,
                                            const FdGrid& grid) {
  const auto k = knots(G, iv);
  std::vector<double> x{k.front()};
  const double kappa = std::sqrt(std::max(0.0, -E));
  const double deep_len = kappa > 0.0 ? 40.0 / kappa : kInf;
  const double last_knot = k.size() > 2 ? k[k.size() - 2] : k.front();
  double deep_start = std::numeric_limits<double>::quiet_NaN();
  bool seen_active = false;
  // returns true when the grid may stop at t
  auto push = [&](double t) {
    x.push_back(t);
    if (x.size() > grid.max_nodes) throw step_control_failure("fd: grid exceeds the node budget");
    if (!(kappa > 0.0)) return false;
    if (alpha * G(t) > 1e-3 * kappa * kappa) {
      seen_active = true;
      deep_start = std::numeric_limits<double>::quiet_NaN();
      return false;
    }
    if (!seen_active || t <= last_knot) return false;
    if (std::isnan(deep_start)) deep_start = t;
    return t - deep_start >= deep_len;
  };
  for (std::size_t p = 0; p + 1 < k.size(); ++p) {
    const double a = k[p], b = k[p + 1];
    if (grid.uniform_h > 0.0) {
      const double n = std::ceil((b - a) / grid.uniform_h);
      if (n > static_cast<double>(grid.max_nodes)) throw step_control_failure("fd: uniform grid too large");
      for (double i = 1; i < n; ++i)
        if (push(a + (b - a) * i / n)) return x;
      if (push(b)) return x;
      continue;
    }
    const double floor_q = std::max(std::abs(E), 1e-300);
    auto target = [&](double t) {
      const double q = std::max(alpha * G(t), floor_q);
      return grid.factor / std::sqrt(q);
    };
    double t = a;
    double h_prev = std::min(target(std::nextafter(a, b)), b - a);
    while (t < b) {
      double h = std::min(target(t), grid.growth * h_prev);
      h = std::min(h, target(std::min(b, t + h)));
      if (t + h >= b || b - (t + h) < 0.25 * h) {
        // finish this piece, splitting the remainder evenly if it is too long
        const double rest = b - t;
        const int n = std::max(1, static_cast<int>(std::ceil(rest / std::max(h, 1e-300) - 1e-9)));
        for (int i = 1; i < n; ++i)
          if (push(t + rest * i / n)) return x;
        if (push(b)) return x;
        break;
      }
      t += h;
      h_prev = h;
      if (push(t)) return x;
    }
  }
  return x;
}

// Nodes are generated outward from t = 0 so that the whole-line grid is the
// union of the two Dirichlet half-line grids.
inline std::vector<double> fd_nodes(const LogPotential& G, double alpha, double E, const Interval& iv,
                                    const FdGrid& grid) {
  if (!(iv.a < 0.0 && iv.b > 0.0)) return fd_nodes_forward(G, alpha, E, iv, grid);
  const LogPotential mirror = G.mirrored();
  auto left = fd_nodes_forward(mirror, alpha, E, {0.0, -iv.a, false}, grid);
  auto right = fd_nodes_forward(G, alpha, E, {0.0, iv.b, false}, grid);
  std::vector<double> x;
  x.reserve(left.size() + right.size());
  for (auto it = left.rbegin(); it != left.rend(); ++it) x.push_back(-*it);
  x.insert(x.end(), right.begin() + 1, right.end());
  return x;
}

inline FdSystem fd_system(const LogPotential& G, double alpha, double E, const Interval& iv, const FdGrid& grid) {
  FdSystem s;
  s.x = fd_nodes(G, alpha, E, iv, grid);
  const std::size_t n = s.x.size();
  s.gm.assign(n, 0.0);
  s.m.assign(n, 0.0);
  s.h_min = kInf;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = s.x[i], b = s.x[i + 1], h = b - a;
    s.h_min = std::min(s.h_min, h);
    s.h_max = std::max(s.h_max, h);
    // one-sided values so that jumps at nodes are split correctly
    const double ga = alpha * g_inside(G, a, b);
    const double gb = alpha * g_inside(G, b, a);
    s.gm[i] += 0.5 * h * ga;
    s.gm[i + 1] += 0.5 * h * gb;
    s.m[i] += 0.5 * h;
    s.m[i + 1] += 0.5 * h;
    const double kk = std::max({ga + E, gb + E, 0.0});
    s.band = std::max(s.band, h * h * kk * kk / 12.0);
  }
  s.band *= grid.band_safety;
  if (n < 2) s.h_min = 0.0;
  return s;
}

// Negative pivots of the tridiagonal K - (alpha G + E) M plus exterior terms.
inline int fd_inertia(const FdSystem& s, double E, bool dirichlet_left, bool& shifted) {
  const std::size_t n = s.x.size();
  if (n < 2) return 0;
  const double kappa = std::sqrt(std::max(0.0, -E));
  auto diag = [&](std::size_t i) {
    double d = -(s.gm[i] + E * s.m[i]);
    if (i > 0) d += 1.0 / (s.x[i] - s.x[i - 1]);
    if (i + 1 < n) d += 1.0 / (s.x[i + 1] - s.x[i]);
    if (i == 0 && !dirichlet_left) d += kappa;
    if (i + 1 == n) d += kappa;
    return d;
  };
  int neg = 0;
  const std::size_t first = dirichlet_left ? 1 : 0;
  double prev = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    double d = diag(i);
    double off = 0.0;
    if (i > first) {
      off = -1.0 / (s.x[i] - s.x[i - 1]);
      d -= off * off / prev;
    }
    if (d == 0.0) {
      d = std::numeric_limits<double>::epsilon() * (std::abs(diag(i)) + std::abs(off));
      if (d == 0.0) d = std::numeric_limits<double>::min();
      shifted = true;
    }
    if (d < 0.0) ++neg;
    prev = d;
  }
  return neg;
}

}  // namespace detail

inline CountResult count_below_fd(const LogPotential& G, double alpha, double E, BoundaryMode mode,
                                  const FdGrid& grid = {}) {
  if (!(alpha > 0.0)) throw invalid_argument("alpha must be > 0");
  if (E > 0.0 || std::isnan(E)) throw invalid_argument("energy must be <= 0 (use -epsilon for 0^-)");
  CountResult r;
  r.method = CountMethod::fd_inertia;
  r.mode = mode;
  r.energy = E;
  r.alpha = alpha;

  std::vector<detail::Piece> pieces;
  LogPotential mirror;
  switch (mode) {
    case BoundaryMode::whole_line: pieces.push_back({&G, detail::whole_line_interval(G)}); break;
    case BoundaryMode::half_line_dirichlet: pieces.push_back({&G, detail::half_line_interval(G)}); break;
    case BoundaryMode::whole_line_dirichlet_at_0:
      mirror = G.mirrored();
      pieces.push_back({&G, detail::half_line_interval(G)});
      pieces.push_back({&mirror, detail::half_line_interval(mirror)});
      break;
  }
  FdGrid fine_grid = grid;
  if (grid.uniform_h > 0.0) {
    fine_grid.uniform_h = 0.5 * grid.uniform_h;
  } else {
    fine_grid.factor = 0.5 * grid.factor;
  }
  struct Sys {
    detail::FdSystem coarse, fine;
    bool dirichlet_left;
  };
  std::vector<Sys> systems;
  double screen = 0.0;
  const char* kind = grid.uniform_h > 0 ? "uniform" : "graded";
  for (const auto& p : pieces) {
    if (!(p.iv.b > p.iv.a)) {
      r.discretization.push_back({kind, p.iv.a, p.iv.b, 0, 0.0, 0.0, 0.0});
      continue;
    }
    systems.push_back({detail::fd_system(*p.g, alpha, E, p.iv, grid), {}, p.iv.dirichlet_left});
    screen = std::max(screen, systems.back().coarse.band);
  }
  bool shifted = false;
  auto coarse = [&](double e) {
    int n = 0;
    for (const auto& s : systems) n += detail::fd_inertia(s.coarse, e, s.dirichlet_left, shifted);
    return n;
  };
  r.count = coarse(E);
  const bool screened = coarse(E - screen) != coarse(std::min(0.0, E + screen));
  if (screened) {
    // refined grids only when something sits in the screening band
    std::size_t i = 0;
    for (const auto& p : pieces) {
      if (!(p.iv.b > p.iv.a)) continue;
      systems[i++].fine = detail::fd_system(*p.g, alpha, E, p.iv, fine_grid);
    }
    auto fine = [&](double e) {
      int n = 0;
      for (const auto& s : systems) n += detail::fd_inertia(s.fine, e, s.dirichlet_left, shifted);
      return n;
    };
    // second-order scheme: e_h - e_{h/2} ~ (3/4) err_h
    const auto chk = detail::threshold_check(coarse, fine, E, screen, 4.0 / 3.0, grid.band_safety);
    if (chk.near) {
      r.near_threshold = true;
      r.uncertainty = chk.uncertainty;
      r.warnings.push_back(std::to_string(chk.uncertainty) + " eigenvalue(s) within the error estimate (" +
                           std::to_string(chk.error_est) + ") of E");
    }
  }
  for (const auto& s : systems)
    r.discretization.push_back(
        {kind, s.coarse.x.front(), s.coarse.x.back(), s.coarse.x.size(), s.coarse.h_min, s.coarse.h_max, screen});
  r.pivot_shifted = shifted;
  if (shifted) r.warnings.push_back("zero pivot replaced by an ulp-scaled shift");
  return r;
}

// ---------------------------------------------------------------------------
// Eigenvalues by bisection on the counting function

struct EigenList {
  std::vector<double> mu;  // eigenvalues are -mu, mu sorted non-increasing
  bool truncated = false;
  int total_below = 0;
};

/// The mu_k with -mu_k < E, located to tol by bisection on the Pruefer count.
inline EigenList eigenvalues_below(const LogPotential& G, double alpha, double E, std::size_t n_max,
                                   BoundaryMode mode = BoundaryMode::whole_line, double tol = 1e-9,
                                   const PrueferOptions& opt = {}) {
  EigenList out;
  if (G.empty()) return out;
  const PrueferCounter pc(G, alpha, mode, opt);
  const int n = pc.raw_count(E);
  out.total_below = n;
  if (n == 0) return out;
  const int want = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), n_max));
  out.truncated = static_cast<std::size_t>(n) > n_max;
  // spectrum lies above -alpha max G
  const double bottom = -alpha * G.max_value() * (1.0 + 1e-12) - 1.0;
  std::vector<double> ev;  // ascending energies
  struct Job {
    double lo, hi;
    int clo, chi;
  };
  std::vector<Job> stack{{bottom, E, pc.raw_count(bottom), n}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.chi == j.clo || j.clo >= want) continue;
    const double mid = 0.5 * (j.lo + j.hi);
    if (j.hi - j.lo <= tol || !(mid > j.lo && mid < j.hi)) {
      for (int i = j.clo; i < j.chi && i < want; ++i) ev.push_back(mid);
      continue;
    }
    const int cm = pc.raw_count(mid);
    stack.push_back({mid, j.hi, cm, j.chi});
    stack.push_back({j.lo, mid, j.clo, cm});
  }
  std::sort(ev.begin(), ev.end());
  for (double e : ev) out.mu.push_back(-e);
  return out;
}

// ---------------------------------------------------------------------------
// Birman-Schwinger spectrum: int G w^2 / int w'^2 with w(0) = 0

struct BsGrid {
  /// Grid resolves the quotient's eigenvectors up to coupling resolve_alpha (0: 100).
  double resolve_alpha = 0.0;
  double factor = 1.0 / 64.0;
  double growth = 1.05;
  double uniform_h = 0.0;
};

namespace detail {

// Largest n_max eigenvalues of B w = lambda A w on a half-line piece.
inline std::vector<double> bs_half(const LogPotential& G, BsGrid grid, std::size_t n_max, double tol) {
  if (grid.resolve_alpha <= 0.0) grid.resolve_alpha = 100.0;
  const Interval iv = half_line_interval(G);
  if (!(iv.b > iv.a)) return {};
  FdGrid fg;
  fg.uniform_h = grid.uniform_h;
  fg.factor = grid.factor;
  fg.growth = grid.growth;
  // graded like the counting grid at coupling resolve_alpha; small floor keeps the tail finite
  const double floor_e = -1e-12 * std::max(1.0, grid.resolve_alpha * G.max_value());
  const auto s = fd_system(G, grid.resolve_alpha, floor_e, iv, fg);
  const std::size_t n = s.x.size();
  // negatives of (sigma A - B) == #{lambda > sigma}
  auto above = [&](double sigma) {
    int neg = 0;
    double prev = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      double a = 1.0 / (s.x[i] - s.x[i - 1]);
      if (i + 1 < n) a += 1.0 / (s.x[i + 1] - s.x[i]);
      double d = sigma * a - s.gm[i] / grid.resolve_alpha;
      if (i > 1) {
        const double off = -sigma / (s.x[i] - s.x[i - 1]);
        d -= off * off / prev;
      }
      if (d == 0.0) d = std::numeric_limits<double>::min();
      if (d < 0.0) ++neg;
      prev = d;
    }
    return neg;
  };
  // w_i^2 <= x_i * sum (w_j - w_{j-1})^2 / h_j, so lambda_1 <= sum_i b_i x_i
  double top = 0.0;
  for (std::size_t i = 1; i < n; ++i) top += s.gm[i] / grid.resolve_alpha * s.x[i];
  top = top * 1.01 + 1e-300;
  const int positive = above(0.0);
  std::vector<double> lam;
  // bisection for each of the top n_max eigenvalues, geometric once bracketed away from 0
  for (std::size_t k = 1; k <= n_max; ++k) {
    if (positive < static_cast<int>(k)) {
      lam.push_back(0.0);
      continue;
    }
    double lo = 0.0, hi = top;
    while (hi - lo > tol * std::max(hi, 1e-300) && hi - lo > 1e-300) {
      const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
      if (mid <= lo || mid >= hi) break;
      (above(mid) >= static_cast<int>(k) ? lo : hi) = mid;
    }
    lam.push_back(0.5 * (lo + hi));
  }
  return lam;
}

}  // namespace detail

/// Largest n_max eigenvalues lambda_n of the quotient, non-increasing.
inline std::vector<double> bs_spectrum(const LogPotential& G, BoundaryMode mode, std::size_t n_max,
                                       const BsGrid& grid = {}, double tol = 1e-10) {
  if (mode == BoundaryMode::whole_line)
    throw invalid_argument("bs_spectrum: the Dirichlet energy form is singular without omega(0) = 0 (whole-line mode)");
  std::vector<double> lam;
  if (!G.empty()) {
    lam = detail::bs_half(G, grid, n_max, tol);
    if (mode == BoundaryMode::whole_line_dirichlet_at_0) {
      const auto m = G.mirrored();
      auto l2 = detail::bs_half(m, grid, n_max, tol);
      lam.insert(lam.end(), l2.begin(), l2.end());
    }
  }
  lam.resize(std::max(lam.size(), n_max), 0.0);
  std::sort(lam.begin(), lam.end(), std::greater<>());
  lam.resize(n_max);
  return lam;
}

/// Grid for the quotient on the axis x = ln|t|, uniform in x.
struct LogAxisGrid {
  double h = 0.02;
  double x_min = -40.0;
  double x_max = 600.0;
};

namespace detail {

// Quotient on t > 0 with w(0) = 0, written in x = ln t with w = e^{x/2} phi:
// int w'^2 dt = int (phi' + phi/2)^2 dx and int G w^2 dt = int f phi^2 dx,
// f(x) = e^{2x} G(e^x). G is taken as 0 outside [e^x_min, e^x_max]; the
// restriction only lowers the eigenvalues. P1 elements with lumped mass.
inline std::vector<double> bs_log_axis_half(const Profile& prof, const LogAxisGrid& grid, std::size_t n_max,
                                            double tol) {
  const double lo = prof.lo(), hi = prof.hi();
  const double xa = lo > std::exp(grid.x_min) ? std::log(lo) : grid.x_min;
  const double xb = hi < std::exp(grid.x_max) ? std::log(hi) : grid.x_max;
  if (!(xb > xa)) return {};
  const auto n = static_cast<std::size_t>(std::ceil((xb - xa) / grid.h));
  const double h = (xb - xa) / static_cast<double>(n);
  auto f = [&](double x) {
    const double l = prof.log_g_log_t(x);
    return l == -kInf ? 0.0 : std::exp(2.0 * x + l);
  };
  std::vector<double> b(n + 1), m(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = xa + h * static_cast<double>(i);
    if (i > 0) b[i] += 0.25 * h * (f(x - 0.25 * h) + f(std::nextafter(x, xa)));
    if (i < n) b[i] += 0.25 * h * (f(x + 0.25 * h) + f(std::nextafter(x, xb)));
    m[i] = (i > 0 && i < n) ? h : 0.5 * h;
  }
  // the boundary terms [phi^2/2] plus phi(xa)^2 from the linear w on (0, e^xa) give +1/2 at both ends
  auto above = [&](double sigma) {
    int neg = 0;
    double prev = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double a = 0.25 * m[i] + ((i > 0) + (i < n)) / h;
      if (i == 0 || i == n) a += 0.5;
      double d = sigma * a - b[i];
      if (i > 0) d -= sigma * sigma / (h * h) / prev;
      if (d == 0.0) d = std::numeric_limits<double>::min();
      if (d < 0.0) ++neg;
      prev = d;
    }
    return neg;
  };
  // energy >= int phi^2/4, so lambda <= 4 max f
  double top = 0.0;
  for (std::size_t i = 0; i <= n; ++i) top = std::max(top, 4.0 * b[i] / m[i]);
  top = top * 1.01 + 1e-300;
  const int positive = above(0.0);
  std::vector<double> lam;
  for (std::size_t k = 1; k <= n_max; ++k) {
    if (positive < static_cast<int>(k)) {
      lam.push_back(0.0);
      continue;
    }
    double l = 0.0, u = top;
    while (u - l > tol * u) {
      const double mid = l > 0.0 ? std::sqrt(l * u) : 0.5 * u;
      if (mid <= l || mid >= u) break;
      (above(mid) >= static_cast<int>(k) ? l : u) = mid;
    }
    lam.push_back(0.5 * (l + u));
  }
  return lam;
}

}  // namespace detail

/// lambda_n of the Dirichlet-at-0 quotient for the untruncated profile of G,
/// discretized in ln|t| so that tails reaching far beyond the window of G are kept.
inline std::vector<double> bs_spectrum_log_axis(const LogPotential& G, std::size_t n_max, const LogAxisGrid& grid = {},
                                                double tol = 1e-9) {
  if (!(grid.h > 0.0) || !(grid.x_max > grid.x_min)) throw invalid_argument("bs_spectrum_log_axis: bad grid");
  std::vector<double> lam;
  if (!G.empty()) {
    lam = detail::bs_log_axis_half(G.profile(), grid, n_max, tol);
    const detail::MirrorProfile left(G.profile_ptr());
    auto l2 = detail::bs_log_axis_half(left, grid, n_max, tol);
    lam.insert(lam.end(), l2.begin(), l2.end());
  }
  lam.resize(std::max(lam.size(), n_max), 0.0);
  std::sort(lam.begin(), lam.end(), std::greater<>());
  lam.resize(n_max);
  return lam;
}

}  // namespace radial2d

#endif  // RADIAL2D_SPECTRAL1D_HPP
