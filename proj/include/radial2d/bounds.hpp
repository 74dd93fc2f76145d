#ifndef RADIAL2D_BOUNDS_HPP
#define RADIAL2D_BOUNDS_HPP

// Closed-form upper bounds on N(-Delta - alpha V) and an audit against counts.
// Divergent integrals give +inf bounds.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "radial2d/potential.hpp"
#include "radial2d/weakseq.hpp"

namespace radial2d {

inline constexpr double kTwoOverSqrt3 = 1.1547005383792515;

/// The integrals every bound is built from.
struct BoundInputs {
  Integral J;
  Integral logweight_1;  // R = 1
  double quasinorm = 0.0;  // window quasinorm of the block sequence
  int K = 0;

  static BoundInputs of(const RadialPotential& P, int K = 200, const QuadOptions& opt = {}) {
    BoundInputs in;
    in.J = integral_J(P, opt);
    in.logweight_1 = integral_logweight(P, 1.0, opt);
    in.K = K;
    if (in.J.finite) in.quasinorm = quasinorm_weak(zeta_sequence(to_log(P), K).values);
    else in.quasinorm = kInf;
    return in;
  }
};

/// 1 + alpha int rF |ln(r/R)| + (2/sqrt 3) alpha int rF.
inline double bound_chad(double alpha, const Integral& J, const Integral& logweight_R) {
  if (!J.finite || !logweight_R.finite) return kInf;
  return 1.0 + alpha * logweight_R.value + kTwoOverSqrt3 * alpha * J.value;
}

inline double bound_chad(const RadialPotential& P, double alpha, double R, const QuadOptions& opt = {}) {
  return bound_chad(alpha, integral_J(P, opt), integral_logweight(P, R, opt));
}

/// 1 + alpha int rF |ln r| + alpha int rF.
inline double bound_chad_sharp(double alpha, const Integral& J, const Integral& logweight_1) {
  if (!J.finite || !logweight_1.finite) return kInf;
  return 1.0 + alpha * logweight_1.value + alpha * J.value;
}

inline double bound_chad_sharp(const RadialPotential& P, double alpha, const QuadOptions& opt = {}) {
  return bound_chad_sharp(alpha, integral_J(P, opt), integral_logweight(P, 1.0, opt));
}

/// n points geometric in [lo, hi].
inline std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw invalid_argument("geometric_grid: need 0 < lo <= hi and n >= 1");
  std::vector<double> g;
  for (int i = 0; i < n; ++i)
    g.push_back(n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

inline std::vector<double> default_R_grid() { return geometric_grid(1e-3, 1e3, 64); }

struct ChadMin {
  double value = kInf;
  double R = 1.0;
};

/// Minimum of bound_chad over the R grid (first minimizer on ties).
inline ChadMin bound_chad_min_over_R(const RadialPotential& P, double alpha,
                                     const std::vector<double>& R_grid = default_R_grid(),
                                     const QuadOptions& opt = {}) {
  if (R_grid.empty()) throw invalid_argument("bound_chad_min_over_R: empty R grid");
  const auto J = integral_J(P, opt);
  ChadMin best;
  best.R = R_grid.front();
  if (!J.finite) return best;
  for (double R : R_grid) {
    const double v = bound_chad(alpha, J, integral_logweight(P, R, opt));
    if (v < best.value) best = {v, R};
  }
  return best;
}

/// alpha J(F): bound on the nonradial count.
inline double bound_lt_nonradial(double alpha, const Integral& J) { return J.finite ? alpha * J.value : kInf; }

inline double bound_lt_nonradial(const RadialPotential& P, double alpha, const QuadOptions& opt = {}) {
  return bound_lt_nonradial(alpha, integral_J(P, opt));
}

/// 1 + alpha (J + C q), q the window quasinorm of the block sequence.
inline double bound_weak(double alpha, const Integral& J, double quasinorm, double C) {
  if (!(C >= 0.0)) throw invalid_argument("bound_weak: C must be >= 0");
  if (!J.finite || !std::isfinite(quasinorm)) return kInf;
  return 1.0 + alpha * (J.value + C * quasinorm);
}

inline double bound_weak(const RadialPotential& P, double alpha, double C, int K = 200, const QuadOptions& opt = {}) {
  const auto in = BoundInputs::of(P, K, opt);
  return bound_weak(alpha, in.J, in.quasinorm, C);
}

struct BoundReport {
  double alpha = 0.0;
  double R = 1.0;
  double C = 1.0;
  int K = 200;
  Integral J, logweight_R, logweight_1;
  double quasinorm = 0.0;
  double chad = kInf;
  ChadMin chad_min;
  double chad_sharp = kInf;
  double lt_nonradial = kInf;
  double weak = kInf;
  std::string weak_note = "window estimate; C is not the optimal constant";
};

struct BoundOptions {
  double R = 1.0;
  double C = 1.0;
  int K = 200;
  std::vector<double> R_grid = default_R_grid();
  QuadOptions quad{};
};

inline BoundReport bound_report(const RadialPotential& P, double alpha, const BoundOptions& opt = {}) {
  if (!(alpha > 0.0)) throw invalid_argument("alpha must be > 0");
  if (!(opt.R > 0.0)) throw invalid_argument("R must be > 0");
  BoundReport r;
  r.alpha = alpha;
  r.R = opt.R;
  r.C = opt.C;
  r.K = opt.K;
  const auto in = BoundInputs::of(P, opt.K, opt.quad);
  r.J = in.J;
  r.logweight_1 = in.logweight_1;
  r.logweight_R = opt.R == 1.0 ? in.logweight_1 : integral_logweight(P, opt.R, opt.quad);
  r.quasinorm = in.quasinorm;
  r.chad = bound_chad(alpha, r.J, r.logweight_R);
  r.chad_min = bound_chad_min_over_R(P, alpha, opt.R_grid, opt.quad);
  r.chad_sharp = bound_chad_sharp(alpha, r.J, r.logweight_1);
  r.lt_nonradial = bound_lt_nonradial(alpha, r.J);
  r.weak = bound_weak(alpha, r.J, r.quasinorm, opt.C);
  return r;
}

/// One computed count for the empirical constant.
struct CountSample {
  double alpha = 0.0;
  long N = 0;
  double J = 0.0;
  double quasinorm = 0.0;
};

/// Least C >= 0 with N <= 1 + alpha (J + C q) on every sample; +inf when a
/// sample exceeds 1 + alpha J with q = 0. A lower bound on any admissible C.
inline double empirical_constant(const std::vector<CountSample>& samples) {
  double c = 0.0;
  for (const auto& s : samples) {
    const double excess = (static_cast<double>(s.N) - 1.0) / s.alpha - s.J;
    if (excess <= 0.0) continue;
    c = std::max(c, s.quasinorm > 0.0 ? excess / s.quasinorm : kInf);
  }
  return c;
}

}  // namespace radial2d

#endif  // RADIAL2D_BOUNDS_HPP
