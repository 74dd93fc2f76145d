#ifndef RADIAL2D_QUADRATURE_HPP
#define RADIAL2D_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace radial2d::quad {

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-8;
  int max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  int evaluations = 0;

  Result& operator+=(const Result& o) {
    value += o.value;
    error += o.error;
    converged = converged && o.converged;
    evaluations += o.evaluations;
    return *this;
  }
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b, int& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  std::array<double, 7> f1{}, f2{};
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    f1[j] = f(c - dx);
    f2[j] = f(c + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  evals += 15;
  // QUADPACK error heuristic: scale |K - G| by the spread of the integrand
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  resasc *= std::abs(h);
  const double value = resk * h;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
  return {a, b, value, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 15 on a finite interval.
template <class F>
Result integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
  Result out;
  if (!(b > a)) return out;
  std::priority_queue<detail::Segment> heap;
  auto first = detail::gk15(f, a, b, out.evaluations);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  int splits = 0;
  while (total_err > std::max(tol.abs, tol.rel * std::abs(total))) {
    if (splits >= tol.max_subdivisions || !std::isfinite(total_err)) {
      out.converged = false;
      break;
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval exhausted at machine precision
      heap.push(worst);
      out.converged = false;
      break;
    }
    auto left = detail::gk15(f, worst.a, mid, out.evaluations);
    auto right = detail::gk15(f, mid, worst.b, out.evaluations);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // re-sum to shed accumulated round-off from the running totals
  double sum = 0.0, err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = err;
  return out;
}

/// Integral over [a, +inf) through t = a + x/(1-x).
template <class F>
Result integrate_upper(F&& f, double a, const Tolerance& tol = {}) {
  auto mapped = [&](double x) {
    const double one_minus = 1.0 - x;
    const double t = a + x / one_minus;
    const double v = f(t);
    return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, tol);
}

/// Integral over (-inf, b] through t = b - x/(1-x).
template <class F>
Result integrate_lower(F&& f, double b, const Tolerance& tol = {}) {
  auto mapped = [&](double x) {
    const double one_minus = 1.0 - x;
    const double t = b - x / one_minus;
    const double v = f(t);
    return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, tol);
}

/// Integrates over the sorted breakpoints, one adaptive pass per piece.
template <class F>
Result integrate_pieces(F&& f, const std::vector<double>& points, const Tolerance& tol = {}) {
  Result out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] > points[i]) out += integrate(f, points[i], points[i + 1], tol);
  }
  return out;
}

}  // namespace radial2d::quad

#endif  // RADIAL2D_QUADRATURE_HPP
