#include <cmath>
#include <stdexcept>
#include <random>

#include "cusplab/transverse.hpp"
#include "doctest.h"

using namespace cusplab;

namespace {

// Independent oracle: brute scan of F(k) = k tan(k f) - sigma for its first
// sign change, step 1e-7 of the bracket.
double scan_kappa(double f, double sigma) {
  const double hi = M_PI / (2.0 * f) * (1.0 - 1e-9);
  const int n = 10'000'000;
  double prev = -sigma;
  for (int i = 1; i <= n; ++i) {
    const double k = hi * i / n;
    const double v = k * std::tan(k * f) - sigma;
    if (prev < 0.0 && v >= 0.0) return k;
    prev = v;
  }
  return hi;
}

}  // namespace

TEST_CASE("solve_kappa limits and reference value") {
  SUBCASE("Neumann limit") {
    const TransverseMode m = solve_kappa(1.0, 0.0);
    CHECK(m.kappa == 0.0);
    CHECK(m.mu == 0.0);
  }
  SUBCASE("Dirichlet limit") {
    const TransverseMode m = solve_kappa(1.0, 1e6);
    CHECK(m.kappa == doctest::Approx(M_PI / 2.0).epsilon(1e-5));
  }
  SUBCASE("f=1, sigma=1 against the scan oracle") {
    const TransverseMode m = solve_kappa(1.0, 1.0);
    // frozen from the 1e-7-step scan of k tan k - 1
    CHECK(m.kappa == doctest::Approx(0.860334).epsilon(2e-6));
    CHECK(m.mu == doctest::Approx(0.740174).epsilon(1e-5));
    CHECK(std::abs(m.kappa - scan_kappa(1.0, 1.0)) < 2e-7);
    CHECK(m.mu == m.kappa * m.kappa);  // exact
  }
}

TEST_CASE("residual and Lemma A.1 bound over random inputs") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> uf(1e-3, 1.0), us(0.0, 10.0);
  for (int i = 0; i < 10'000; ++i) {
    const double f = uf(rng);
    const double sigma = us(rng);
    const TransverseMode m = solve_kappa(f, sigma);
    const double residual = std::abs(m.kappa * std::tan(m.kappa * f) - sigma);
    CHECK(residual <= 1e-10 * (1.0 + sigma));
    CHECK(m.mu <= sigma / f + 1e-12);
  }
}

TEST_CASE("kappa increases with sigma at fixed f") {
  for (double f : {0.05, 0.3, 1.0}) {
    double prev = -1.0;
    for (double sigma = 0.25; sigma <= 16.0; sigma *= 2.0) {
      const double k = solve_kappa(f, sigma).kappa;
      CHECK(k > prev);
      prev = k;
    }
  }
}

TEST_CASE("mu f / sigma ratio") {
  CHECK(mu_over_sigma_ratio(1.0, 1.0) == doctest::Approx(0.740174).epsilon(1e-5));
  SUBCASE("thin interval pushes the ratio to 1") {
    const double r = mu_over_sigma_ratio(1e-3, 1.0);
    CHECK(r >= 0.999);
    CHECK(r < 1.0);
  }
  SUBCASE("expansion bound 1 - ratio <= sigma f") {
    for (double f : {1e-1, 1e-2, 1e-3}) {
      const double r = mu_over_sigma_ratio(f, 1.0);
      CHECK(1.0 - r <= 1.0 * f);
    }
  }
  CHECK_THROWS_AS(mu_over_sigma_ratio(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("eval_v") {
  const TransverseMode neumann = solve_kappa(1.0, 0.0);
  CHECK(eval_v(neumann, 0.3) == doctest::Approx(1.0));

  const TransverseMode m = solve_kappa(1.0, 1.0);
  CHECK(eval_v(m, 1.0) == doctest::Approx(std::cos(m.kappa)).epsilon(1e-12));
  CHECK(eval_v(m, 1.0) == doctest::Approx(0.65226).epsilon(1e-4));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double y = u(rng);
    CHECK(eval_v(m, y) == eval_v(m, -y));  // even in the symmetric case
    CHECK(eval_v(m, y) > 0.0);
  }
  CHECK_THROWS_AS(eval_v(m, 1.5), std::out_of_range);
}

TEST_CASE("non-symmetric solver") {
  SUBCASE("symmetric reduction is exact to 1e-12") {
    const TransverseMode sym = solve_kappa(1.0, 1.0);
    const TransverseMode gen = solve_nonsymmetric(1.0, 1.0, 1.0);
    CHECK(std::abs(gen.kappa - sym.kappa) < 1e-12);
    CHECK(std::abs(gen.phase) < 1e-12);
  }
  SUBCASE("Neumann-Dirichlet limit: kappa -> pi/4 on width 2") {
    const TransverseMode m = solve_nonsymmetric(1.0, 0.0, 1e9);
    CHECK(m.kappa == doctest::Approx(M_PI / 4.0).epsilon(1e-6));
  }
  SUBCASE("thin interval: mu_bar f / sigma_bar near 1") {
    const TransverseMode m = solve_nonsymmetric(0.01, 1.0, 3.0);
    const double ratio = m.mu * 0.01 / 2.0;  // sigma_bar = 2
    CHECK(ratio >= 0.97);
    CHECK(ratio < 1.0);
  }
  SUBCASE("boundary conditions hold at the returned mode") {
    const TransverseMode m = solve_nonsymmetric(0.7, 0.5, 2.5);
    const double f = 0.7;
    auto w = [&m](double y) { return std::cos(m.kappa * y + m.phase); };
    auto wp = [&m](double y) { return -m.kappa * std::sin(m.kappa * y + m.phase); };
    CHECK(wp(-f) == doctest::Approx(0.5 * w(-f)).epsilon(1e-9));
    CHECK(wp(f) == doctest::Approx(-2.5 * w(f)).epsilon(1e-9));
  }
}

TEST_CASE("dn lowest mode") {
  CHECK(dn_lowest_mode(1.0) == doctest::Approx(M_PI * M_PI / 16.0).epsilon(1e-15));
  CHECK(dn_lowest_mode(0.5) == doctest::Approx(M_PI * M_PI / 4.0).epsilon(1e-15));
  // Dirichlet limit of the Robin solver approaches the closed form
  const TransverseMode m = solve_nonsymmetric(0.3, 0.0, 1e8);
  CHECK(m.mu == doctest::Approx(dn_lowest_mode(0.3)).epsilon(1e-3));
}
