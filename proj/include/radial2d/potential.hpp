#ifndef RADIAL2D_POTENTIAL_HPP
#define RADIAL2D_POTENTIAL_HPP

// Radial profiles F(r) >= 0, their logarithmic form G(t) = e^{2t} F(e^t),
// and the weighted integrals of G that feed every bound.
//
// Everything is evaluated in log space: a profile reports ln G(t), and for
// t > 0 also ln G(e^s) as a function of s = ln t, so tails living at
// r = exp(exp(s)) never overflow.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "radial2d/errors.hpp"
#include "radial2d/quadrature.hpp"

namespace radial2d {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// G(t) = A t^{-sigma} (ln t)^{-tau} (ln ln t)^{-rho} for t > t_start.
struct TailLaw {
  double log_amplitude = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
  double rho = 0.0;
  double t_start = 0.0;

  /// ln G(e^s), s = ln t.
  double log_g_at_log_t(double s) const {
    double v = log_amplitude - sigma * s;
    if (tau != 0.0) v -= tau * std::log(s);
    if (rho != 0.0) v -= rho * std::log(std::log(s));
    return v;
  }

  /// Whether the integral of t^w G(t) over (T, inf) is finite.
  bool moment_converges(int w) const {
    constexpr double eq = 1e-12;
    const double a = sigma - w;
    if (a > 1.0 + eq) return true;
    if (a < 1.0 - eq) return false;
    if (tau > 1.0 + eq) return true;
    if (tau < 1.0 - eq) return false;
    return rho > 1.0 + eq;
  }
};

/// A nonnegative profile on the log axis.
class Profile {
 public:
  virtual ~Profile() = default;

  /// ln G(t); -inf where G vanishes.
  virtual double log_g(double t) const = 0;

  /// ln G(e^s) for t = e^s > 0.
  virtual double log_g_log_t(double s) const {
    if (s > 700.0) return -kInf;
    return log_g(std::exp(s));
  }

  /// Support of G in t; either end may be infinite.
  virtual double lo() const = 0;
  virtual double hi() const = 0;

  /// Interior points where G or its derivative jumps.
  virtual std::vector<double> breaks() const { return {}; }

  virtual std::optional<TailLaw> tail() const { return std::nullopt; }

  /// True when G decays smoothly towards hi() so the upper edge can be trimmed.
  virtual bool soft_upper_edge() const { return false; }

  double g(double t) const {
    const double l = log_g(t);
    return l == -kInf ? 0.0 : std::exp(l);
  }

  bool empty() const { return !(hi() > lo()); }
};

enum class PotentialKind {
  square_well,
  annulus_well,
  gaussian,
  power_log_tail,
  bump,
  tabulated,
  scaled_product,
};

inline std::string_view to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::square_well: return "square-well";
    case PotentialKind::annulus_well: return "annulus-well";
    case PotentialKind::gaussian: return "gaussian";
    case PotentialKind::power_log_tail: return "power-log-tail";
    case PotentialKind::bump: return "bump";
    case PotentialKind::tabulated: return "tabulated";
    case PotentialKind::scaled_product: return "scaled-product";
  }
  return "?";
}

inline PotentialKind parse_kind(std::string_view name) {
  for (auto k : {PotentialKind::square_well, PotentialKind::annulus_well, PotentialKind::gaussian,
                 PotentialKind::power_log_tail, PotentialKind::bump, PotentialKind::tabulated,
                 PotentialKind::scaled_product}) {
    if (to_string(k) == name) return k;
  }
  throw invalid_potential("unknown potential kind '" + std::string(name) + "'");
}

/// Ordered name/value pairs; order is part of the serialized form.
using Params = std::vector<std::pair<std::string, double>>;

namespace detail {

inline double log_or_ninf(double x) { return x > 0.0 ? std::log(x) : -kInf; }

class EmptyProfile final : public Profile {
 public:
  double log_g(double) const override { return -kInf; }
  double lo() const override { return 0.0; }
  double hi() const override { return 0.0; }
};

// F = h on (r_in, r_out]; r_in = 0 gives the disc.
class StepProfile final : public Profile {
 public:
  StepProfile(double height, double r_in, double r_out)
      : log_h_(std::log(height)), t_lo_(r_in > 0.0 ? std::log(r_in) : -kInf), t_hi_(std::log(r_out)) {}
  double log_g(double t) const override {
    if (t > t_hi_ || t <= t_lo_) return -kInf;
    return 2.0 * t + log_h_;
  }
  double lo() const override { return t_lo_; }
  double hi() const override { return t_hi_; }

 private:
  double log_h_, t_lo_, t_hi_;
};

class GaussianProfile final : public Profile {
 public:
  GaussianProfile(double height, double width)
      : log_h_(std::log(height)), inv_w2_(1.0 / (width * width)), t_hi_(std::log(width) + 0.5 * std::log(745.0)) {}
  double log_g(double t) const override {
    if (t > t_hi_) return -kInf;
    return 2.0 * t + log_h_ - std::exp(2.0 * t) * inv_w2_;
  }
  double lo() const override { return -kInf; }
  double hi() const override { return t_hi_; }
  bool soft_upper_edge() const override { return true; }

 private:
  double log_h_, inv_w2_, t_hi_;
};

// h * exp(1 - 1/(1 - x^2)), x = (r - c)/w.
class BumpProfile final : public Profile {
 public:
  BumpProfile(double height, double center, double width)
      : log_h_(std::log(height)), c_(center), w_(width),
        t_lo_(center - width > 0.0 ? std::log(center - width) : -kInf), t_hi_(std::log(center + width)) {}
  double log_g(double t) const override {
    if (t >= t_hi_ || t <= t_lo_) return -kInf;
    const double x = (std::exp(t) - c_) / w_;
    const double d = 1.0 - x * x;
    if (d <= 0.0) return -kInf;
    return 2.0 * t + log_h_ + 1.0 - 1.0 / d;
  }
  double lo() const override { return t_lo_; }
  double hi() const override { return t_hi_; }
  std::vector<double> breaks() const override { return {std::log(c_)}; }

 private:
  double log_h_, c_, w_, t_lo_, t_hi_;
};

class TailProfile final : public Profile {
 public:
  explicit TailProfile(TailLaw law) : law_(law) {}
  double log_g(double t) const override {
    if (t <= law_.t_start) return -kInf;
    return law_.log_g_at_log_t(std::log(t));
  }
  double log_g_log_t(double s) const override {
    if (std::exp(s) <= law_.t_start) return -kInf;
    return law_.log_g_at_log_t(s);
  }
  double lo() const override { return law_.t_start; }
  double hi() const override { return kInf; }
  std::optional<TailLaw> tail() const override { return law_; }

 private:
  TailLaw law_;
};

// Piecewise linear F(r) through the samples, zero outside.
class TableProfile final : public Profile {
 public:
  TableProfile(std::vector<double> r, std::vector<double> f) : r_(std::move(r)), f_(std::move(f)) {}
  double value_r(double r) const {
    if (r < r_.front() || r > r_.back()) return 0.0;
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    if (it == r_.end()) return f_.back();
    const auto i = static_cast<std::size_t>(it - r_.begin());
    if (i == 0) return f_.front();
    const double w = (r - r_[i - 1]) / (r_[i] - r_[i - 1]);
    return (1.0 - w) * f_[i - 1] + w * f_[i];
  }
  double log_g(double t) const override {
    const double v = value_r(std::exp(t));
    return v > 0.0 ? 2.0 * t + std::log(v) : -kInf;
  }
  double lo() const override { return r_.front() > 0.0 ? std::log(r_.front()) : -kInf; }
  double hi() const override { return std::log(r_.back()); }
  std::vector<double> breaks() const override {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < r_.size(); ++i) out.push_back(std::log(r_[i]));
    return out;
  }

 private:
  std::vector<double> r_, f_;
};

// G = depth on (a, b), a purely one-dimensional profile.
class IndicatorProfile final : public Profile {
 public:
  IndicatorProfile(double depth, double a, double b) : log_d_(std::log(depth)), a_(a), b_(b) {}
  double log_g(double t) const override { return (t > a_ && t < b_) ? log_d_ : -kInf; }
  double lo() const override { return a_; }
  double hi() const override { return b_; }

 private:
  double log_d_, a_, b_;
};

// G(t) = src(-t), used for the left half of the Dirichlet-at-0 problem.
class MirrorProfile final : public Profile {
 public:
  explicit MirrorProfile(std::shared_ptr<const Profile> src) : src_(std::move(src)) {}
  double log_g(double t) const override { return src_->log_g(-t); }
  double lo() const override { return -src_->hi(); }
  double hi() const override { return -src_->lo(); }
  std::vector<double> breaks() const override {
    auto b = src_->breaks();
    for (auto& x : b) x = -x;
    std::reverse(b.begin(), b.end());
    return b;
  }

 private:
  std::shared_ptr<const Profile> src_;
};

struct ParamSpec {
  const char* name;
  std::optional<double> fallback;
};

inline const std::vector<ParamSpec>& param_schema(PotentialKind k) {
  static const double r0_default = std::exp(std::exp(2.0));
  static const std::vector<ParamSpec> square{{"height", 1.0}, {"radius", 1.0}};
  static const std::vector<ParamSpec> annulus{{"height", 1.0}, {"inner", std::nullopt}, {"outer", std::nullopt}};
  static const std::vector<ParamSpec> gauss{{"height", 1.0}, {"width", 1.0}};
  static const std::vector<ParamSpec> tail{{"r0", r0_default}, {"sigma", 2.0}, {"tau", 1.0}, {"amplitude", 1.0}};
  static const std::vector<ParamSpec> bump{{"height", 1.0}, {"center", std::nullopt}, {"width", std::nullopt}};
  static const std::vector<ParamSpec> table{};
  static const std::vector<ParamSpec> scaled{{"r0", r0_default}, {"sigma", 2.0}, {"tau", 1.0},
                                             {"amplitude", 1.0}, {"depth", 3.0}, {"power", 1.0}};
  switch (k) {
    case PotentialKind::square_well: return square;
    case PotentialKind::annulus_well: return annulus;
    case PotentialKind::gaussian: return gauss;
    case PotentialKind::power_log_tail: return tail;
    case PotentialKind::bump: return bump;
    case PotentialKind::tabulated: return table;
    case PotentialKind::scaled_product: return scaled;
  }
  return table;
}

}  // namespace detail

/// A nonnegative radial profile V(x) = F(|x|) from the catalog.
class RadialPotential {
 public:
  PotentialKind kind() const { return kind_; }
  const Params& params() const { return params_; }
  const std::string& description() const { return description_; }
  void set_description(std::string d) { description_ = std::move(d); }

  double param(std::string_view name) const {
    for (const auto& [k, v] : params_)
      if (k == name) return v;
    throw invalid_potential("potential has no parameter '" + std::string(name) + "'");
  }

  /// Support of F in r.
  std::pair<double, double> support() const {
    if (profile_->empty()) return {0.0, 0.0};
    const double lo = profile_->lo();
    const double hi = profile_->hi();
    return {lo == -kInf ? 0.0 : std::exp(lo), hi == kInf ? kInf : std::exp(hi)};
  }

  bool singular_at_zero() const { return false; }

  /// F(r).
  double operator()(double r) const {
    if (!(r > 0.0)) r = std::numeric_limits<double>::min();
    const double t = std::log(r);
    const double l = profile_->log_g(t);
    return l == -kInf ? 0.0 : std::exp(l - 2.0 * t);
  }

  const Profile& profile() const { return *profile_; }
  std::shared_ptr<const Profile> profile_ptr() const { return profile_; }

  const std::vector<double>& table_r() const { return table_r_; }
  const std::vector<double>& table_f() const { return table_f_; }

  friend RadialPotential make_catalog_potential(PotentialKind, const Params&);
  friend RadialPotential make_tabulated(std::vector<double>, std::vector<double>);

 private:
  PotentialKind kind_ = PotentialKind::square_well;
  Params params_;
  std::string description_;
  std::shared_ptr<const Profile> profile_;
  std::vector<double> table_r_, table_f_;
};

/// Builds a catalog potential; missing parameters take their documented defaults.
inline RadialPotential make_catalog_potential(PotentialKind kind, const Params& given) {
  if (kind == PotentialKind::tabulated)
    throw invalid_potential("tabulated potentials are built from samples (make_tabulated)");
  const auto& schema = detail::param_schema(kind);
  for (const auto& [name, value] : given) {
    bool known = false;
    for (const auto& s : schema) known = known || name == s.name;
    if (!known) throw invalid_potential("unknown parameter '" + name + "' for kind " + std::string(to_string(kind)));
    if (!std::isfinite(value)) throw invalid_potential("parameter '" + name + "' is not finite");
  }
  RadialPotential p;
  p.kind_ = kind;
  for (const auto& s : schema) {
    std::optional<double> v = s.fallback;
    for (const auto& [name, value] : given)
      if (name == s.name) v = value;
    if (!v) throw invalid_potential(std::string("missing required parameter '") + s.name + "'");
    p.params_.emplace_back(s.name, *v);
  }
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw invalid_potential(std::string(to_string(kind)) + ": " + what);
  };

  using namespace detail;
  switch (kind) {
    case PotentialKind::square_well: {
      const double h = p.param("height"), a = p.param("radius");
      need(h >= 0.0, "height must be >= 0");
      need(a > 0.0, "radius must be > 0");
      p.profile_ = h > 0.0 ? std::shared_ptr<const Profile>(std::make_shared<StepProfile>(h, 0.0, a))
                           : std::make_shared<EmptyProfile>();
      break;
    }
    case PotentialKind::annulus_well: {
      const double h = p.param("height"), ri = p.param("inner"), ro = p.param("outer");
      need(h >= 0.0, "height must be >= 0");
      need(ri >= 0.0 && ro > ri, "need 0 <= inner < outer");
      p.profile_ = h > 0.0 ? std::shared_ptr<const Profile>(std::make_shared<StepProfile>(h, ri, ro))
                           : std::make_shared<EmptyProfile>();
      break;
    }
    case PotentialKind::gaussian: {
      const double h = p.param("height"), w = p.param("width");
      need(h >= 0.0, "height must be >= 0");
      need(w > 0.0, "width must be > 0");
      p.profile_ = h > 0.0 ? std::shared_ptr<const Profile>(std::make_shared<GaussianProfile>(h, w))
                           : std::make_shared<EmptyProfile>();
      break;
    }
    case PotentialKind::bump: {
      const double h = p.param("height"), c = p.param("center"), w = p.param("width");
      need(h >= 0.0, "height must be >= 0");
      need(c > 0.0 && w > 0.0, "center and width must be > 0");
      p.profile_ = h > 0.0 ? std::shared_ptr<const Profile>(std::make_shared<BumpProfile>(h, c, w))
                           : std::make_shared<EmptyProfile>();
      break;
    }
    case PotentialKind::power_log_tail:
    case PotentialKind::scaled_product: {
      const double r0 = p.param("r0"), a = p.param("amplitude");
      TailLaw law;
      law.sigma = p.param("sigma");
      law.tau = p.param("tau");
      need(a >= 0.0, "amplitude must be >= 0");
      need(r0 > std::numbers::e, "r0 must exceed e");
      law.t_start = std::log(r0);
      law.log_amplitude = a > 0.0 ? std::log(a) : -kInf;
      if (kind == PotentialKind::scaled_product) {
        const double depth = p.param("depth"), power = p.param("power");
        need(depth == 1.0 || depth == 2.0 || depth == 3.0, "depth must be 1, 2 or 3");
        need(power > 0.0, "power must be > 0");
        if (depth == 1.0) law.sigma += power;
        if (depth == 2.0) law.tau += power;
        if (depth == 3.0) {
          need(law.t_start > std::numbers::e, "depth 3 damping needs r0 > e^e");
          law.rho = power;
        }
      }
      p.profile_ = a > 0.0 ? std::shared_ptr<const Profile>(std::make_shared<TailProfile>(law))
                           : std::make_shared<EmptyProfile>();
      break;
    }
    case PotentialKind::tabulated: break;
  }
  return p;
}

inline RadialPotential make_catalog_potential(std::string_view kind, const Params& given) {
  return make_catalog_potential(parse_kind(kind), given);
}

/// Piecewise-linear F through (r_i, F_i), zero outside [r_0, r_last].
inline RadialPotential make_tabulated(std::vector<double> r, std::vector<double> f) {
  if (r.size() != f.size() || r.size() < 2) throw invalid_potential("tabulated: need >= 2 matching samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(f[i])) throw invalid_potential("tabulated: non-finite sample");
    if (f[i] < 0.0) throw invalid_potential("tabulated: negative sample F(" + std::to_string(r[i]) + ")");
    if (r[i] < 0.0 || (i > 0 && !(r[i] > r[i - 1])))
      throw invalid_potential("tabulated: radii must be >= 0 and strictly increasing");
  }
  RadialPotential p;
  p.kind_ = PotentialKind::tabulated;
  p.table_r_ = r;
  p.table_f_ = f;
  const bool any = std::any_of(f.begin(), f.end(), [](double v) { return v > 0.0; });
  p.profile_ = any ? std::shared_ptr<const Profile>(std::make_shared<detail::TableProfile>(std::move(r), std::move(f)))
                   : std::make_shared<detail::EmptyProfile>();
  return p;
}

/// Integral value with an error estimate; value = +inf when divergent.
struct Integral {
  double value = 0.0;
  double error = 0.0;
  bool finite = true;
  bool converged = true;
};

struct QuadOptions {
  quad::Tolerance tol{1e-10, 1e-8, 4000};
  /// Partial sums beyond this are declared divergent.
  double divergence_cap = 1e12;
  int max_doublings = 60;
};

namespace detail {

// Integral over (T, inf) of t^w G for a tail law, in u = ln ln t.
inline Integral tail_moment(const TailLaw& law, double T, int w, const QuadOptions& opt) {
  if (!law.moment_converges(w)) return {kInf, 0.0, false, true};
  const double U = std::log(std::log(T));
  const double lin = w + 1.0 - law.sigma;
  // pure u^{-rho} decay has a closed form
  if (std::abs(lin) < 1e-12 && std::abs(law.tau - 1.0) < 1e-12) {
    const double v = std::exp(law.log_amplitude) * std::pow(U, 1.0 - law.rho) / (law.rho - 1.0);
    return {v, 0.0, true, true};
  }
  auto f = [&](double u) {
    double l = law.log_amplitude + (1.0 - law.tau) * u;
    if (lin != 0.0) l += lin * std::exp(u);
    if (law.rho != 0.0) l -= law.rho * std::log(u);
    return std::exp(l);
  };
  auto r = quad::integrate_upper(f, U, opt.tol);
  return {r.value, r.error, true, r.converged};
}

// Numerical fallback on (a, inf): doubling pieces, cap on the partial sums.
template <class F>
Integral doubling_tail(F&& f, double a, const QuadOptions& opt) {
  Integral out;
  double len = 1.0, x = a;
  for (int i = 0; i < opt.max_doublings; ++i) {
    auto r = quad::integrate(f, x, x + len, opt.tol);
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
    if (out.value > opt.divergence_cap) return {kInf, 0.0, false, true};
    if (std::abs(r.value) <= opt.tol.abs + 1e-3 * opt.tol.rel * std::abs(out.value)) return out;
    x += len;
    len *= 2.0;
  }
  out.converged = false;
  return out;
}

}  // namespace detail

/// Integral over (from, to) of G(t) |t - center|^power, power in {0, 1}.
inline Integral integrate_g(const Profile& prof, int power, double center = 0.0, double from = -kInf,
                            double to = kInf, const QuadOptions& opt = {}) {
  if (power != 0 && power != 1) throw invalid_argument("integrate_g: power must be 0 or 1");
  const double lo = std::max(from, prof.lo());
  const double hi = std::min(to, prof.hi());
  if (!(hi > lo)) return {};

  auto integrand = [&](double t) {
    const double l = prof.log_g(t);
    if (l == -kInf) return 0.0;
    const double g = std::exp(l);
    return power == 0 ? g : g * std::abs(t - center);
  };

  std::vector<double> pts;
  if (std::isfinite(lo)) pts.push_back(lo);
  for (double b : prof.breaks())
    if (b > lo && b < hi) pts.push_back(b);
  if (power == 1 && center > lo && center < hi) pts.push_back(center);

  Integral out;
  std::optional<TailLaw> law = prof.tail();
  bool law_tail = false;
  double tail_start = 0.0;
  if (hi == kInf) {
    double last = pts.empty() ? 0.0 : *std::max_element(pts.begin(), pts.end());
    tail_start = std::max({last, std::numbers::e, power == 1 ? center + 1.0 : -kInf});
    if (law) {
      tail_start = std::max(tail_start, law->t_start);
      law_tail = true;
    }
    pts.push_back(tail_start);
  } else {
    pts.push_back(hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  if (lo == -kInf) {
    auto r = quad::integrate_lower(integrand, pts.front(), opt.tol);
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
  }
  auto mid = quad::integrate_pieces(integrand, pts, opt.tol);
  out.value += mid.value;
  out.error += mid.error;
  out.converged = out.converged && mid.converged;

  if (hi == kInf) {
    Integral tail;
    if (law_tail) {
      tail = detail::tail_moment(*law, tail_start, power, opt);
      if (tail.finite && power == 1 && center != 0.0) {
        auto t0 = detail::tail_moment(*law, tail_start, 0, opt);
        tail.value -= center * t0.value;
        tail.error += std::abs(center) * t0.error;
        tail.converged = tail.converged && t0.converged;
      }
    } else {
      tail = detail::doubling_tail(integrand, tail_start, opt);
    }
    if (!tail.finite) return {kInf, 0.0, false, true};
    out.value += tail.value;
    out.error += tail.error;
    out.converged = out.converged && tail.converged;
  }
  if (!out.converged && out.error > 1e3 * std::max(opt.tol.abs, opt.tol.rel * std::abs(out.value)))
    throw quadrature_failure("quadrature did not converge (estimate " + std::to_string(out.value) + " +/- " +
                             std::to_string(out.error) + ")");
  return out;
}

/// J(F) = int_0^inf r F(r) dr = int_R G(t) dt.
inline Integral integral_J(const RadialPotential& p, const QuadOptions& opt = {}) {
  return integrate_g(p.profile(), 0, 0.0, -kInf, kInf, opt);
}

/// int_0^inf r F(r) |ln(r/R)| dr.
inline Integral integral_logweight(const RadialPotential& p, double R, const QuadOptions& opt = {}) {
  if (!(R > 0.0)) throw invalid_argument("integral_logweight: R must be > 0");
  return integrate_g(p.profile(), 1, std::log(R), -kInf, kInf, opt);
}

/// G on the log axis together with a truncation window [t_min, t_max]
/// outside of which the mass of G is at most tail_tol.
class LogPotential {
 public:
  LogPotential() : profile_(std::make_shared<detail::EmptyProfile>()) {}

  /// Wraps a one-dimensional profile (no radial source).
  static LogPotential from_profile(std::shared_ptr<const Profile> prof, double tail_tol = 1e-8,
                                   const QuadOptions& opt = {}) {
    LogPotential lp;
    lp.profile_ = std::move(prof);
    lp.tail_tol_ = tail_tol;
    lp.fit_domain(opt);
    return lp;
  }

  double operator()(double t) const {
    if (t < t_min_ || t > t_max_) return 0.0;
    return profile_->g(t);
  }
  /// G without truncation.
  double raw(double t) const { return profile_->g(t); }

  const Profile& profile() const { return *profile_; }
  std::shared_ptr<const Profile> profile_ptr() const { return profile_; }
  const std::optional<RadialPotential>& source() const { return source_; }

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  double tail_tol() const { return tail_tol_; }
  bool empty() const { return !(t_max_ > t_min_); }

  /// Breakpoints strictly inside the window.
  std::vector<double> breaks() const {
    std::vector<double> out;
    for (double b : profile_->breaks())
      if (b > t_min_ && b < t_max_) out.push_back(b);
    return out;
  }

  /// sup of G over the window (dense sampling plus the break points).
  double max_value() const { return max_value_; }

  /// Same function reflected, G(-t).
  LogPotential mirrored() const {
    LogPotential m;
    m.profile_ = std::make_shared<detail::MirrorProfile>(profile_);
    m.tail_tol_ = tail_tol_;
    m.t_min_ = -t_max_;
    m.t_max_ = -t_min_;
    m.max_value_ = max_value_;
    return m;
  }

  /// Restriction to t >= 0 (window clipped).
  LogPotential right_half() const {
    LogPotential h = *this;
    h.t_min_ = std::max(0.0, t_min_);
    if (h.t_max_ < h.t_min_) h.t_max_ = h.t_min_;
    h.max_value_ = h.empty() ? 0.0 : h.sample_max();
    return h;
  }

  friend LogPotential to_log(const RadialPotential&, double, const QuadOptions&);

 private:
  void fit_domain(const QuadOptions& opt) {
    const Profile& p = *profile_;
    if (p.empty()) {
      t_min_ = t_max_ = 0.0;
      max_value_ = 0.0;
      return;
    }
    const double half_tol = 0.5 * tail_tol_;
    QuadOptions mass_opt = opt;
    mass_opt.tol.abs = std::min(opt.tol.abs, 1e-4 * half_tol);
    std::vector<double> pts = p.breaks();
    // lower end
    if (std::isfinite(p.lo())) {
      t_min_ = p.lo();
    } else {
      double b0 = pts.empty() ? (std::isfinite(p.hi()) ? p.hi() : 0.0) : *std::min_element(pts.begin(), pts.end());
      auto mass_below = [&](double t) { return integrate_g(p, 0, 0.0, -kInf, t, mass_opt).value; };
      double a = -800.0, b = b0;
      if (mass_below(b) <= half_tol) {
        t_min_ = b;
      } else {
        for (int i = 0; i < 80 && b - a > 1e-9 * std::max(1.0, std::abs(a)); ++i) {
          const double m = 0.5 * (a + b);
          (mass_below(m) <= half_tol ? a : b) = m;
        }
        t_min_ = a;
      }
    }
    // upper end
    if (std::isfinite(p.hi())) {
      t_max_ = p.hi();
      if (p.soft_upper_edge()) {
        double a = pts.empty() ? t_min_ : std::max(t_min_, *std::max_element(pts.begin(), pts.end()));
        double b = p.hi();
        auto mass_above = [&](double t) { return integrate_g(p, 0, 0.0, t, kInf, mass_opt).value; };
        if (mass_above(a) > half_tol) {
          for (int i = 0; i < 80 && b - a > 1e-12 * std::max(1.0, std::abs(b)); ++i) {
            const double m = 0.5 * (a + b);
            (mass_above(m) <= half_tol ? b : a) = m;
          }
          t_max_ = b;
        }
      }
    } else {
      auto law = p.tail();
      if (!law || !law->moment_converges(0))
        throw non_integrable("the integral of rF(r) diverges; no finite window reaches the tail tolerance");
      // bisection on u = ln ln t
      const double t0 = std::max({law->t_start, std::numbers::e, pts.empty() ? 0.0 : pts.back()});
      auto mass_above_u = [&](double u) {
        return detail::tail_moment(*law, std::exp(std::exp(u)), 0, mass_opt).value;
      };
      double ua = std::log(std::log(t0));
      const double u_cap = std::log(std::log(1e15));
      if (mass_above_u(u_cap) > half_tol)
        throw non_integrable("tail of G decays too slowly: no window up to t = 1e15 reaches the tail tolerance");
      double ub = u_cap;
      if (mass_above_u(ua) <= half_tol) {
        ub = ua;
      } else {
        for (int i = 0; i < 100 && ub - ua > 1e-13; ++i) {
          const double m = 0.5 * (ua + ub);
          (mass_above_u(m) <= half_tol ? ub : ua) = m;
        }
      }
      t_max_ = std::exp(std::exp(ub));
    }
    max_value_ = sample_max();
  }

  double sample_max() const {
    if (empty()) return 0.0;
    double best = 0.0;
    auto probe = [&](double t) {
      if (t >= t_min_ && t <= t_max_) best = std::max(best, profile_->g(t));
    };
    std::vector<double> pts{t_min_, t_max_};
    for (double b : breaks()) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    constexpr int kSamples = 2000;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double a = pts[i], b = pts[i + 1];
      for (double t : {a, b, std::nextafter(a, b), std::nextafter(b, a)}) probe(t);
      for (int j = 1; j < kSamples; ++j) probe(a + (b - a) * j / kSamples);
      // geometric sampling for long pieces away from the origin
      if (a > 1.0 && b / a > 10.0) {
        for (int j = 1; j < kSamples; ++j) probe(a * std::pow(b / a, static_cast<double>(j) / kSamples));
      }
    }
    return best;
  }

  std::shared_ptr<const Profile> profile_;
  std::optional<RadialPotential> source_;
  double tail_tol_ = 1e-8;
  double t_min_ = 0.0, t_max_ = 0.0;
  double max_value_ = 0.0;
};

/// G(t) = e^{2t} F(e^t) with a window whose truncated mass is <= tail_tol.
inline LogPotential to_log(const RadialPotential& p, double tail_tol = 1e-8, const QuadOptions& opt = {}) {
  LogPotential lp = LogPotential::from_profile(p.profile_ptr(), tail_tol, opt);
  lp.source_ = p;
  return lp;
}

/// G = depth on (a, b).
inline LogPotential indicator_potential(double depth, double a, double b) {
  if (!(depth >= 0.0) || !(b > a)) throw invalid_argument("indicator_potential: need depth >= 0 and a < b");
  if (depth == 0.0) return {};
  return LogPotential::from_profile(std::make_shared<detail::IndicatorProfile>(depth, a, b));
}

}  // namespace radial2d

#endif  // RADIAL2D_POTENTIAL_HPP
