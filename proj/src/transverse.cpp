#include "cusplab/transverse.hpp"

#include <cmath>
#include <stdexcept>

#include "cusplab/numerics.hpp"

namespace cusplab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TransverseMode solve_kappa(double f_val, double sigma_val) {
  if (!(f_val > 0.0)) throw std::invalid_argument("solve_kappa: f must be positive");
  if (sigma_val < 0.0) throw std::invalid_argument("solve_kappa: sigma must be >= 0");

  TransverseMode m;
  m.f_val = f_val;
  m.sigma_lower = m.sigma_upper = sigma_val;
  if (sigma_val == 0.0) return m;  // Neumann limit, kappa = 0

  // F(κ) = κ tan(κ f) - σ is strictly increasing on (0, π/(2f)),
  // negative at 0 and +∞ at the tangent pole: unique first root inside.
  const double hi = (kPi / (2.0 * f_val)) * (1.0 - 1e-12);
  auto F = [f_val, sigma_val](double k) {
    return k * std::tan(k * f_val) - sigma_val;
  };
  m.kappa = bisect(F, 0.0, hi, 1e-13);
  m.mu = m.kappa * m.kappa;
  return m;
}

double mu_over_sigma_ratio(double f_val, double sigma_val) {
  if (!(sigma_val > 0.0))
    throw std::invalid_argument("mu_over_sigma_ratio: sigma must be positive");
  const TransverseMode m = solve_kappa(f_val, sigma_val);
  return m.mu * f_val / sigma_val;
}

double eval_v(const TransverseMode& mode, double y) {
  if (std::abs(y) > mode.f_val)
    throw std::out_of_range("eval_v: |y| exceeds the half-width");
  return std::cos(mode.kappa * y + mode.phase);
}

TransverseMode solve_nonsymmetric(double f_val, double sigma1, double sigma2) {
  if (!(f_val > 0.0))
    throw std::invalid_argument("solve_nonsymmetric: f must be positive");
  if (sigma1 < 0.0 || sigma2 < 0.0)
    throw std::invalid_argument("solve_nonsymmetric: sigma must be >= 0");

  TransverseMode m;
  m.f_val = f_val;
  m.sigma_lower = sigma1;
  m.sigma_upper = sigma2;
  if (sigma1 == 0.0 && sigma2 == 0.0) return m;

  // The ansatz cos(κy + φ) with the two Robin conditions gives
  //   κ tan(κf - φ) = σ₁,  κ tan(κf + φ) = σ₂,
  // equivalently 2κf = atan(σ₁/κ) + atan(σ₂/κ). The right side is strictly
  // decreasing in κ and below π, so G has a unique root in (0, π/(2f)).
  auto G = [=](double k) {
    return std::atan(sigma1 / k) + std::atan(sigma2 / k) - 2.0 * k * f_val;
  };
  const double hi = (kPi / (2.0 * f_val)) * (1.0 - 1e-12);
  double lo = hi;
  while (G(lo) < 0.0) lo *= 0.5;
  m.kappa = (G(lo) == 0.0) ? lo : bisect(G, lo, hi, 1e-14);
  m.mu = m.kappa * m.kappa;
  m.phase = 0.5 * (std::atan(sigma2 / m.kappa) - std::atan(sigma1 / m.kappa));
  return m;
}

double dn_lowest_mode(double f_val) {
  if (!(f_val > 0.0)) throw std::invalid_argument("dn_lowest_mode: f must be positive");
  return kPi * kPi / (16.0 * f_val * f_val);
}

}  // namespace cusplab
