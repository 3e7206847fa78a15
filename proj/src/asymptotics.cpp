#include "cusplab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cusplab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos coefficients, g = 7, n = 9 (Godfrey). Relative error ~1e-15 on
// the positive real axis.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,      -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};

}  // namespace

double lgamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("lgamma_fn: need x > 0");
  if (x < 0.5) {
    // Reflection: Γ(x) Γ(1-x) = π / sin(πx)
    return std::log(kPi / std::sin(kPi * x)) - lgamma_fn(1.0 - x);
  }
  const double z = x - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_fn: need a, b > 0");
  return std::exp(lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b));
}

double zeta_fn(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta_fn: need s > 1");
  // Alternating (eta) series with Cohen-Rodriguez Villegas-Zagier
  // acceleration; error ~ (3 + sqrt 8)^{-n}.
  const int n = 48;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d, acc = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    acc += c / std::pow(k + 1.0, s);
    b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
  }
  const double eta = acc / d;
  return eta / (1.0 - std::pow(2.0, 1.0 - s));
}

double weyl_term(double volume, double lambda) {
  if (!(volume > 0.0) || std::isinf(volume))
    throw std::domain_error("weyl_term: volume must be finite and positive");
  return lambda * volume / (4.0 * kPi);
}

double titchmarsh_count(const RealFn& q, double lambda, double a) {
  if (q(a) >= lambda) return 0.0;
  double hi;
  try {
    hi = geometric_scan(q, lambda, std::max(a, 1e-6), 1e6, 1.05);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("titchmarsh_count: no turning point below 1e6");
  }
  const double lo = std::max(a, hi / 1.05);
  const double x_star =
      (q(lo) >= lambda) ? bisect([&](double x) { return q(x) - lambda; }, a, hi)
                        : bisect([&](double x) { return q(x) - lambda; }, lo, hi);

  // Substitute x = x* - u²: the integrand 2u sqrt(λ - q) vanishes linearly
  // at u = 0 instead of like a square root at x = x*.
  const double u_max = std::sqrt(x_star - a);
  auto integrand = [&](double u) {
    const double x = x_star - u * u;
    const double v = lambda - q(x);
    return (v > 0.0) ? 2.0 * u * std::sqrt(v) : 0.0;
  };
  const double rough = adaptive_simpson(integrand, 0.0, u_max, 1e-6);
  const double integral =
      adaptive_simpson(integrand, 0.0, u_max, 1e-8 * std::abs(rough) + 1e-14);
  return integral / kPi;
}

TitchmarshVerdict titchmarsh_applicable(const RealFn& q,
                                        const std::vector<double>& grid) {
  if (grid.size() < 4)
    throw std::invalid_argument("titchmarsh_applicable: need >= 4 probes");
  std::vector<double> q1, q2, x3q1;
  for (double x : grid) {
    const double h = 1e-5 * (1.0 + std::abs(x));
    const double d1 = (q(x + h) - q(x - h)) / (2.0 * h);
    const double d2 = (q(x + h) - 2.0 * q(x) + q(x - h)) / (h * h);
    q1.push_back(d1);
    q2.push_back(d2);
    x3q1.push_back(x * x * x * d1);
  }
  const size_t n = grid.size();
  const bool increasing =
      std::all_of(q1.begin(), q1.end(), [](double v) { return v > 0.0; });
  if (increasing && x3q1[n - 1] > x3q1[n - 2] && x3q1[n - 2] > x3q1[n - 3])
    return TitchmarshVerdict::Titchmarsh;
  // Convexity only needs to hold on the tail together with eventual growth;
  // an early dip in q' (common for W-type potentials) does not spoil it.
  const bool convex_tail = q2[n - 1] >= 0 && q2[n - 2] >= 0 && q2[n - 3] >= 0;
  if (convex_tail && q1[n - 1] > 0.0) return TitchmarshVerdict::Convex;
  return TitchmarshVerdict::Inconclusive;
}

double hsigma_closed_form(double alpha, double beta, double sigma0,
                          double lambda) {
  if (!(alpha > beta) || beta < 0.0)
    throw std::domain_error("hsigma_closed_form: need alpha > beta >= 0");
  if (!(sigma0 > 0.0))
    throw std::domain_error("hsigma_closed_form: need sigma0 > 0");
  if (lambda <= 0.0) return 0.0;
  const double g = alpha - beta;
  return std::pow(sigma0, -1.0 / g) / (g * kPi) * beta_fn(1.0 / g, 1.5) *
         std::pow(lambda, 0.5 + 1.0 / g);
}

double dirichlet_superlinear(double alpha, double lambda) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::domain_error("dirichlet_superlinear: need 0 < alpha <= 1");
  if (!(lambda > std::exp(1.0)))
    throw std::domain_error("dirichlet_superlinear: need lambda > e");
  if (alpha == 1.0) return lambda * std::log(lambda) / kPi;
  return (1.0 / kPi) * std::pow(2.0 / kPi, 1.0 / alpha) * zeta_fn(1.0 / alpha) *
         beta_fn(1.0 + 0.5 / alpha, 0.5) * std::pow(lambda, 0.5 + 0.5 / alpha);
}

SpectralPrediction composite_prediction(const CuspProfile& p,
                                        const BoundaryCoefficient& s,
                                        double lambda) {
  SpectralPrediction out;
  out.lambda = lambda;
  out.regime = classify_weyl_regime(p);
  const double volume = domain_volume(p);

  const bool power_profile = p.kind == ProfileKind::PowerLaw;
  const bool power_sigma =
      !s.pair_mode() &&
      (s.kind == SigmaKind::Constant || s.kind == SigmaKind::PowerLaw);
  const double sigma_beta = (s.kind == SigmaKind::PowerLaw) ? s.beta : 0.0;

  if (std::isinf(volume)) {
    if (!power_profile || p.param > 1.0) {
      throw std::domain_error(
          "composite_prediction: infinite volume requires a power profile "
          "with alpha <= 1");
    }
    out.dirichlet_superlinear_part = dirichlet_superlinear(p.param, lambda);
    if (power_sigma && s.s0 > 0.0 && sigma_beta < p.param) {
      out.h_sigma_part = hsigma_closed_form(p.param, sigma_beta, s.s0, lambda);
      out.h_sigma_source = "closed-form";
    } else {
      auto W = [&p, &s](double x) { return eval_W(p, s, x); };
      out.h_sigma_part = titchmarsh_count(W, lambda, p.a);
      out.h_sigma_source = "titchmarsh";
    }
  } else {
    out.weyl_part = weyl_term(volume, lambda);
    if (power_profile && power_sigma && s.s0 > 0.0 && sigma_beta < p.param) {
      out.h_sigma_part = hsigma_closed_form(p.param, sigma_beta, s.s0, lambda);
      out.h_sigma_source = "closed-form";
    } else {
      auto W = [&p, &s](double x) { return eval_W(p, s, x); };
      out.h_sigma_part = titchmarsh_count(W, lambda, p.a);
      out.h_sigma_source = "titchmarsh";
    }
    if (out.regime == WeylRegime::Linear && s.kind == SigmaKind::Constant &&
        s.s0 > 0.0 && !s.pair_mode()) {
      const double a_lin = linear_regime_a(p);
      out.linear_coefficient =
          volume / (4.0 * kPi) + a_lin / (4.0 * std::sqrt(s.s0));
    }
  }
  out.total = out.weyl_part + out.h_sigma_part + out.dirichlet_superlinear_part;
  return out;
}

double dn_threshold_x(const CuspProfile& p, double lambda) {
  const double target = kPi / (4.0 * std::sqrt(lambda));
  if (!(p.f(p.a) > target))
    throw std::domain_error("dn_threshold_x: lambda too small for this profile");
  double hi = p.a * 2.0;
  int guard = 0;
  while (p.f(hi) > target) {
    hi *= 2.0;
    if (++guard > 60)
      throw std::runtime_error("dn_threshold_x: no solution found");
  }
  return bisect([&](double x) { return p.f(x) - target; }, p.a, hi, 1e-12);
}

}  // namespace cusplab
