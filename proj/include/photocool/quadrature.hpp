#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace photocool {

struct QuadratureConfig {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_intervals = 20000;
  std::vector<double> breakpoints;  // interior subdivision hints for integrate_line
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr double gk_x[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double gk_wk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679,  0.1903505780647854,  0.2044329400752989, 0.2094821410847278};
inline constexpr double gk_wg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct GkResult {
  double value;
  double error;
};

template <class F>
GkResult gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = gk_wk[7] * fc;
  double gauss = gk_wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * gk_x[j];
    const double fsum = f(c - dx) + f(c + dx);
    kron += gk_wk[j] * fsum;
    if (j % 2 == 1) gauss += gk_wg[j / 2] * fsum;
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

struct Segment {
  double a, b, value, error;
  int integrand;  // 0 = direct, 1 = right tail, 2 = left tail
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod integral of f over (-inf, inf). Breakpoints seed the
// subdivision (put them at peaks and shoulders); the tails beyond the outermost
// breakpoints are folded onto [0, 1) by x = B +- t/(1-t).
template <class F>
double integrate_line(F&& f, const QuadratureConfig& cfg = {}) {
  std::vector<double> pts = cfg.breakpoints;
  for (double p : pts)
    if (!std::isfinite(p)) throw std::invalid_argument("integrate_line: breakpoints must be finite");
  if (pts.empty()) pts = {-1.0, 0.0, 1.0};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const double lo = pts.front(), hi = pts.back();

  auto right = [&f, hi](double t) {
    const double om = 1.0 - t;
    return f(hi + t / om) / (om * om);
  };
  auto left = [&f, lo](double t) {
    const double om = 1.0 - t;
    return f(lo - t / om) / (om * om);
  };
  auto eval = [&](int which, double a, double b) {
    switch (which) {
      case 1: return detail::gk15(right, a, b);
      case 2: return detail::gk15(left, a, b);
      default: return detail::gk15(f, a, b);
    }
  };

  std::priority_queue<detail::Segment> heap;
  double total = 0.0, err = 0.0;
  int count = 0;
  auto push = [&](int which, double a, double b) {
    const detail::GkResult r = eval(which, a, b);
    if (!std::isfinite(r.value))
      throw std::runtime_error("integrate_line: integrand produced a non-finite value");
    heap.push({a, b, r.value, r.error, which});
    total += r.value;
    err += r.error;
    ++count;
  };

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) push(0, pts[i], pts[i + 1]);
  if (pts.size() == 1) {  // single breakpoint: the tails carry everything
  }
  const double tail_seed[5] = {0.0, 0.5, 0.9, 0.99, 1.0};
  for (int i = 0; i < 4; ++i) {
    push(1, tail_seed[i], tail_seed[i + 1]);
    push(2, tail_seed[i], tail_seed[i + 1]);
  }

  while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (count >= cfg.max_intervals)
      throw std::runtime_error("integrate_line: no convergence within the interval budget");
    detail::Segment worst = heap.top();
    heap.pop();
    total -= worst.value;
    err -= worst.error;
    --count;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw std::runtime_error("integrate_line: interval collapsed below machine resolution");
    push(worst.integrand, worst.a, mid);
    push(worst.integrand, mid, worst.b);
  }
  return total;
}

// Adaptive integral over a finite interval [a, b].
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
  std::priority_queue<detail::Segment> heap;
  double total = 0.0, err = 0.0;
  int count = 0;
  auto push = [&](double x0, double x1) {
    const detail::GkResult r = detail::gk15(f, x0, x1);
    if (!std::isfinite(r.value))
      throw std::runtime_error("integrate: integrand produced a non-finite value");
    heap.push({x0, x1, r.value, r.error, 0});
    total += r.value;
    err += r.error;
    ++count;
  };
  std::vector<double> pts{a, b};
  for (double p : cfg.breakpoints)
    if (p > a && p < b) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) push(pts[i], pts[i + 1]);

  while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
    if (count >= cfg.max_intervals)
      throw std::runtime_error("integrate: no convergence within the interval budget");
    detail::Segment worst = heap.top();
    heap.pop();
    total -= worst.value;
    err -= worst.error;
    --count;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw std::runtime_error("integrate: interval collapsed below machine resolution");
    push(worst.a, mid);
    push(mid, worst.b);
  }
  return total;
}

struct PeakHint {
  double center;
  double width;
};

struct SpectrumQuadrature {
  std::vector<PeakHint> peaks;  // sharp features of the density
  double rel_tol = 1e-8;
  int max_intervals = 20000;
};

// Whole-line integral of a spectral density with known sharp features. Each
// peak contributes breakpoints at center and at 1x / 8x its width on both
// sides, so narrow resonances cannot slip between panels.
inline double integrate_spectrum(const std::function<double(double)>& density,
                                 const SpectrumQuadrature& cfg) {
  QuadratureConfig qc;
  qc.rel_tol = cfg.rel_tol;
  qc.max_intervals = cfg.max_intervals;
  for (const PeakHint& p : cfg.peaks) {
    const double w = std::abs(p.width);
    qc.breakpoints.push_back(p.center);
    if (w > 0.0) {
      qc.breakpoints.push_back(p.center - 8.0 * w);
      qc.breakpoints.push_back(p.center - w);
      qc.breakpoints.push_back(p.center + w);
      qc.breakpoints.push_back(p.center + 8.0 * w);
    }
  }
  return integrate_line(density, qc);
}

}  // namespace photocool
