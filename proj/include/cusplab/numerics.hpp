#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cusplab {

using RealFn = std::function<double(double)>;

// Recursive adaptive Simpson with absolute tolerance.
double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol,
                        int max_depth = 40);

// Bisection for a sign change of g on [lo, hi]; g(lo) and g(hi) must have
// opposite signs. Stops when the bracket width drops below
// rel_tol * (1 + |root|).
double bisect(const RealFn& g, double lo, double hi, double rel_tol = 1e-13);

// Scans x = start * factor^k until pred(x) is true; returns the first such x.
// Throws if x exceeds limit.
double geometric_scan(const RealFn& value, double threshold, double start,
                      double limit, double factor = 1.02);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

// Monotone cubic interpolant (Steffen 1990). Preserves monotonicity and
// positivity of the data; C1, with piecewise-linear second derivative.
class SteffenSpline {
 public:
  SteffenSpline() = default;
  SteffenSpline(std::vector<double> x, std::vector<double> y);

  double eval(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  int segment(double x) const;
  std::vector<double> x_, y_, yp_;  // node values and node slopes
};

}  // namespace cusplab
