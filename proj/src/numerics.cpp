#include "cusplab/numerics.hpp"

#include <algorithm>
#include <cassert>

namespace cusplab {

namespace {

double simpson(const RealFn& f, double a, double fa, double b, double fb,
               double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const RealFn& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol,
                        int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  return adapt(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

double bisect(const RealFn& g, double lo, double hi, double rel_tol) {
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    throw std::invalid_argument("bisect: no sign change on bracket");
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * (1.0 + std::abs(mid))) return mid;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double geometric_scan(const RealFn& value, double threshold, double start,
                      double limit, double factor) {
  double x = start;
  while (x <= limit) {
    if (value(x) >= threshold) return x;
    x *= factor;
  }
  throw std::runtime_error("geometric_scan: threshold not reached below limit");
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  assert(x.size() == y.size() && x.size() >= 2);
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SteffenSpline::SteffenSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 3 || y_.size() != n) {
    throw std::invalid_argument("SteffenSpline: need >= 3 matching samples");
  }
  for (size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("SteffenSpline: x not strictly increasing");
    }
  }
  std::vector<double> h(n - 1), s(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    s[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  yp_.assign(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double p = (s[i - 1] * h[i] + s[i] * h[i - 1]) / (h[i - 1] + h[i]);
    if (s[i - 1] * s[i] <= 0.0) {
      yp_[i] = 0.0;
    } else {
      const double cap = 2.0 * std::min(std::abs(s[i - 1]), std::abs(s[i]));
      yp_[i] = (std::abs(p) > cap) ? std::copysign(cap, s[i - 1]) : p;
    }
  }
  // One-sided slopes at the ends, clipped to the adjacent secant.
  auto end_slope = [](double s0, double s1, double h0, double h1) {
    double p = s0 * (1.0 + h0 / (h0 + h1)) - s1 * h0 / (h0 + h1);
    if (p * s0 <= 0.0) return 0.0;
    if (std::abs(p) > 2.0 * std::abs(s0)) return 2.0 * s0;
    return p;
  };
  yp_[0] = end_slope(s[0], s[1], h[0], h[1]);
  yp_[n - 1] = end_slope(s[n - 2], s[n - 3], h[n - 2], h[n - 3]);
}

int SteffenSpline::segment(double x) const {
  if (x < x_.front() || x > x_.back()) {
    throw std::out_of_range("SteffenSpline: query outside sampled range");
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  if (i >= static_cast<int>(x_.size()) - 1) i = static_cast<int>(x_.size()) - 2;
  if (i < 0) i = 0;
  return i;
}

double SteffenSpline::eval(double x) const {
  const int i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (y_[i + 1] - y_[i]) / h;
  const double a = (yp_[i] + yp_[i + 1] - 2.0 * s) / (h * h);
  const double b = (3.0 * s - 2.0 * yp_[i] - yp_[i + 1]) / h;
  const double d = x - x_[i];
  return y_[i] + d * (yp_[i] + d * (b + d * a));
}

double SteffenSpline::deriv(double x) const {
  const int i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (y_[i + 1] - y_[i]) / h;
  const double a = (yp_[i] + yp_[i + 1] - 2.0 * s) / (h * h);
  const double b = (3.0 * s - 2.0 * yp_[i] - yp_[i + 1]) / h;
  const double d = x - x_[i];
  return yp_[i] + d * (2.0 * b + 3.0 * d * a);
}

double SteffenSpline::deriv2(double x) const {
  const int i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double s = (y_[i + 1] - y_[i]) / h;
  const double a = (yp_[i] + yp_[i + 1] - 2.0 * s) / (h * h);
  const double b = (3.0 * s - 2.0 * yp_[i] - yp_[i + 1]) / h;
  const double d = x - x_[i];
  return 2.0 * b + 6.0 * d * a;
}

}  // namespace cusplab
