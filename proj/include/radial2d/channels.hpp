#ifndef RADIAL2D_CHANNELS_HPP
#define RADIAL2D_CHANNELS_HPP

// The 2D count N(-Delta - alpha V) for radial V assembled from angular
// channels: in channel m the radial problem becomes -psi'' - alpha G psi on
// the line, and its eigenvalues below -m^2 are the channel's bound states.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "radial2d/parallel.hpp"
#include "radial2d/potential.hpp"
#include "radial2d/spectral1d.hpp"

namespace radial2d {

struct ChannelOptions {
  CountMethod method = CountMethod::pruefer;
  /// Count every channel with both engines and record disagreements.
  bool cross_check = false;
  PrueferOptions pruefer{};
  FdGrid fd{};
  double eps_rel = 1e-9;
  unsigned threads = 0;  // 0: thread_count()
};

struct ChannelCount {
  int m = 0;
  int count = 0;
  bool near_threshold = false;
  int uncertainty = 0;
  std::optional<int> other_engine;  // cross-check count
  bool other_near = false;
  int other_uncertainty = 0;
};

struct ChannelBreakdown {
  double alpha = 0.0;
  double epsilon = 0.0;
  CountMethod method = CountMethod::pruefer;
  double mu1 = 0.0;
  int m_max = 0;
  std::vector<ChannelCount> per_channel;  // m = 0..m_max; N_{-m} = N_m
  long total = 0;
  int radial_dirichlet = 0;
  bool radial_dirichlet_near = false;
  int radial_dirichlet_uncertainty = 0;
  long nonradial = 0;  // sum over m != 0
  int uncertainty = 0;  // flagged channels, weighted by multiplicity
  int engine_disagreements = 0;
  std::vector<std::string> warnings;

  int channel(int m) const {
    const int a = std::abs(m);
    return a < static_cast<int>(per_channel.size()) ? per_channel[static_cast<std::size_t>(a)].count : 0;
  }
};

/// Counts for one potential at one coupling; the Pruefer cells are shared by all channels.
class ChannelCounter {
 public:
  ChannelCounter(const LogPotential& G, double alpha, const ChannelOptions& opt = {})
      : G_(G), alpha_(alpha), opt_(opt), eps_(threshold_epsilon(G, alpha, opt.eps_rel)) {
    if (!(alpha > 0.0)) throw invalid_argument("alpha must be > 0");
    if (opt.method == CountMethod::pruefer || opt.cross_check)
      pruefer_.emplace(G_, alpha, BoundaryMode::whole_line, opt.pruefer);
  }

  double epsilon() const { return eps_; }
  double alpha() const { return alpha_; }
  const LogPotential& potential() const { return G_; }

  double channel_energy(int m) const { return -static_cast<double>(m) * m - eps_; }

  CountResult count_with(CountMethod method, int m) const {
    const double E = channel_energy(m);
    if (method == CountMethod::pruefer) {
      if (!pruefer_) return count_below_pruefer(G_, alpha_, E, BoundaryMode::whole_line, opt_.pruefer);
      return pruefer_->count(E);
    }
    return count_below_fd(G_, alpha_, E, BoundaryMode::whole_line, opt_.fd);
  }

  /// N_m = #{k : mu_k > m^2}.
  ChannelCount channel(int m) const {
    const auto r = count_with(opt_.method, m);
    ChannelCount c;
    c.m = std::abs(m);
    c.count = r.count;
    c.near_threshold = r.near_threshold;
    c.uncertainty = r.uncertainty;
    if (opt_.cross_check) {
      const auto o = count_with(opt_.method == CountMethod::pruefer ? CountMethod::fd_inertia : CountMethod::pruefer, m);
      c.other_engine = o.count;
      c.other_near = o.near_threshold;
      c.other_uncertainty = o.uncertainty;
    }
    return c;
  }

  /// Largest mu_k of the m = 0 problem (0 when there is none).
  double mu1() const {
    if (G_.empty()) return 0.0;
    const auto ev = eigenvalues_below(G_, alpha_, -eps_, 1, BoundaryMode::whole_line, 1e-9, opt_.pruefer);
    return ev.mu.empty() ? 0.0 : ev.mu.front();
  }

  /// ceil(sqrt(mu_1)): N_m = 0 for |m| > m_max.
  int cutoff() const { return static_cast<int>(std::ceil(std::sqrt(mu1()))); }

  CountResult radial_dirichlet() const {
    const double E = -eps_;
    if (opt_.method == CountMethod::pruefer)
      return count_below_pruefer(G_, alpha_, E, BoundaryMode::whole_line_dirichlet_at_0, opt_.pruefer);
    return count_below_fd(G_, alpha_, E, BoundaryMode::whole_line_dirichlet_at_0, opt_.fd);
  }

  ChannelBreakdown breakdown() const {
    ChannelBreakdown b;
    b.alpha = alpha_;
    b.epsilon = eps_;
    b.method = opt_.method;
    b.mu1 = mu1();
    b.m_max = static_cast<int>(std::ceil(std::sqrt(b.mu1)));
    b.per_channel.resize(static_cast<std::size_t>(b.m_max) + 1);
    parallel_for(
        b.per_channel.size(), [&](std::size_t i) { b.per_channel[i] = channel(static_cast<int>(i)); },
        opt_.threads ? opt_.threads : thread_count());
    // trailing channels that came out empty are dropped (m_max is an upper bound)
    while (b.per_channel.size() > 1 && b.per_channel.back().count == 0 && !b.per_channel.back().near_threshold)
      b.per_channel.pop_back();
    if (G_.empty()) b.per_channel.clear();
    for (const auto& c : b.per_channel) {
      const int mult = c.m == 0 ? 1 : 2;
      b.total += mult * c.count;
      if (c.m != 0) b.nonradial += mult * c.count;
      if (c.near_threshold) {
        b.uncertainty += mult * c.uncertainty;
        b.warnings.push_back("channel " + std::to_string(c.m) + ": eigenvalue near -m^2");
      }
      if (c.other_engine) {
        const int slack = c.uncertainty + c.other_uncertainty;
        if (std::abs(*c.other_engine - c.count) > slack) {
          ++b.engine_disagreements;
          b.warnings.push_back("channel " + std::to_string(c.m) + ": engines disagree (" + std::to_string(c.count) +
                               " vs " + std::to_string(*c.other_engine) + ")");
        }
      }
    }
    const auto rd = radial_dirichlet();
    b.radial_dirichlet = rd.count;
    b.radial_dirichlet_near = rd.near_threshold;
    b.radial_dirichlet_uncertainty = rd.uncertainty;
    if (rd.near_threshold) b.warnings.push_back("radial Dirichlet problem: eigenvalue near 0");
    return b;
  }

 private:
  LogPotential G_;
  double alpha_;
  ChannelOptions opt_;
  double eps_;
  std::optional<PrueferCounter> pruefer_;
};

inline int channel_count(const RadialPotential& P, double alpha, int m, const ChannelOptions& opt = {}) {
  return ChannelCounter(to_log(P), alpha, opt).channel(m).count;
}

inline int channel_cutoff(const RadialPotential& P, double alpha, const ChannelOptions& opt = {}) {
  return ChannelCounter(to_log(P), alpha, opt).cutoff();
}

inline ChannelBreakdown total_count(const LogPotential& G, double alpha, const ChannelOptions& opt = {}) {
  return ChannelCounter(G, alpha, opt).breakdown();
}

inline ChannelBreakdown total_count(const RadialPotential& P, double alpha, const ChannelOptions& opt = {}) {
  return total_count(to_log(P), alpha, opt);
}

struct SandwichReport {
  long lower = 0;  // radial_dirichlet + nonradial
  long total = 0;
  long upper = 0;  // lower + 1
  bool holds = false;
};

/// n_+(1/alpha, B_V) <= N <= n_+(1/alpha, B_V) + 1 with n_+ = radial Dirichlet + nonradial.
inline SandwichReport sandwich_check(const ChannelBreakdown& b) {
  SandwichReport r;
  r.lower = b.radial_dirichlet + b.nonradial;
  r.total = b.total;
  r.upper = r.lower + 1;
  r.holds = r.total >= r.lower && r.total <= r.upper;
  return r;
}

inline SandwichReport sandwich_check(const RadialPotential& P, double alpha, const ChannelOptions& opt = {}) {
  return sandwich_check(total_count(P, alpha, opt));
}

struct DualityReport {
  double alpha = 0.0;
  int bs_count = 0;           // #{n : lambda_n > 1/alpha}
  int radial_dirichlet = 0;   // count at E = -eps
  int radial_dirichlet_at_zero = 0;  // count of eigenvalues < 0 exactly
  int bs_near = 0;            // lambda_n within the discretization error of 1/alpha
  int rd_uncertainty = 0;
  bool agrees = false;
  std::vector<double> lambda;  // leading part of the BS spectrum
};

/// #{lambda_n(T) > 1/alpha} against the radial Dirichlet count.
inline DualityReport bs_duality_check(const LogPotential& G, double alpha, const BsGrid& grid_in = {},
                                      const ChannelOptions& opt = {}) {
  DualityReport r;
  r.alpha = alpha;
  const double eps = threshold_epsilon(G, alpha, opt.eps_rel);
  const auto rd = count_below_pruefer(G, alpha, -eps, BoundaryMode::whole_line_dirichlet_at_0, opt.pruefer);
  const auto rd0 = count_below_pruefer(G, alpha, 0.0, BoundaryMode::whole_line_dirichlet_at_0, opt.pruefer);
  r.radial_dirichlet = rd.count;
  r.radial_dirichlet_at_zero = rd0.count;
  // eigenvalues in (-eps, 0) are real states the threshold convention leaves out
  r.rd_uncertainty = rd.uncertainty + std::abs(rd0.count - rd.count) + rd0.uncertainty;

  BsGrid grid = grid_in;
  if (grid.resolve_alpha <= 0.0) grid.resolve_alpha = alpha;
  BsGrid fine = grid;
  fine.factor *= 0.5;
  if (fine.uniform_h > 0.0) fine.uniform_h *= 0.5;
  const double s = 1.0 / alpha;
  std::size_t n = static_cast<std::size_t>(rd0.count) + 8;
  for (;;) {
    r.lambda = bs_spectrum(G, BoundaryMode::whole_line_dirichlet_at_0, n, grid);
    if (r.lambda.empty() || r.lambda.back() <= s) break;
    n *= 2;
  }
  const auto lf = bs_spectrum(G, BoundaryMode::whole_line_dirichlet_at_0, n, fine);
  for (std::size_t i = 0; i < r.lambda.size(); ++i) {
    if (r.lambda[i] > s) ++r.bs_count;
    const double err = (4.0 / 3.0) * std::abs(r.lambda[i] - lf[i]);
    if (std::abs(r.lambda[i] - s) <= 4.0 * err + 1e-12 * s) ++r.bs_near;
  }
  r.agrees = std::abs(r.bs_count - r.radial_dirichlet) <= r.bs_near + r.rd_uncertainty;
  return r;
}

inline DualityReport bs_duality_check(const RadialPotential& P, double alpha, const BsGrid& grid = {},
                                      const ChannelOptions& opt = {}) {
  return bs_duality_check(to_log(P), alpha, grid, opt);
}

}  // namespace radial2d

#endif  // RADIAL2D_CHANNELS_HPP
