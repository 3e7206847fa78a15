#include <cmath>
#include <stdexcept>
#include <random>

#include "cusplab/numerics.hpp"
#include "doctest.h"

using namespace cusplab;

TEST_CASE("adaptive simpson on smooth integrands") {
  const double v = adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                                    M_PI, 1e-12);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-10));

  const double g = adaptive_simpson([](double x) { return std::exp(-x * x); },
                                    -8.0, 8.0, 1e-12);
  CHECK(g == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("bisect finds the root of a monotone function") {
  const double r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(bisect([](double x) { return x + 10.0; }, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("geometric scan locates the threshold crossing") {
  auto q = [](double x) { return x * x; };
  const double x = geometric_scan(q, 200.0, 1.0, 1e6, 1.01);
  CHECK(x >= std::sqrt(200.0));
  CHECK(x <= std::sqrt(200.0) * 1.01);
  CHECK_THROWS_AS(geometric_scan([](double) { return 0.0; }, 1.0, 1.0, 1e3),
                  std::runtime_error);
}

TEST_CASE("least squares slope recovers an exact line") {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double v : x) y.push_back(3.5 * v - 1.0);
  CHECK(ls_slope(x, y) == doctest::Approx(3.5).epsilon(1e-14));
}

TEST_CASE("Steffen spline reproduces monotone data and stays monotone") {
  std::vector<double> xs, ys;
  for (int i = 0; i <= 100; ++i) {
    const double x = 1.0 + 0.1 * i;
    xs.push_back(x);
    ys.push_back(1.0 / (x * x));
  }
  SteffenSpline sp(xs, ys);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(xs.front(), xs.back());
  double prev_x = xs.front();
  double prev_v = sp.eval(prev_x);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(sp.eval(x) == doctest::Approx(1.0 / (x * x)).epsilon(2e-3));
    CHECK(sp.deriv(x) <= 0.0);  // data decreasing -> interpolant decreasing
  }
  (void)prev_x;
  (void)prev_v;

  CHECK_THROWS_AS(sp.eval(0.5), std::out_of_range);
}
