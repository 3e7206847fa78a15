#pragma once

namespace cusplab {

// Principal eigenpair of -d²/dy² on (-f, f) with Robin conditions
// ∂_y v(∓f) = ±σ v(∓f); eigenfunction cos(κ y + φ), eigenvalue μ = κ².
struct TransverseMode {
  double kappa = 0.0;
  double mu = 0.0;
  double phase = 0.0;  // 0 in the symmetric case
  double f_val = 0.0;
  double sigma_lower = 0.0;  // σ₁ at y = -f
  double sigma_upper = 0.0;  // σ₂ at y = +f
};

// First nonnegative root of κ tan(κ f) = σ in [0, π/(2f)).
TransverseMode solve_kappa(double f_val, double sigma_val);

// μ f / σ, in (0, 1] and -> 1 as f σ -> 0.
double mu_over_sigma_ratio(double f_val, double sigma_val);

// cos(κ y + phase), |y| <= f.
double eval_v(const TransverseMode& mode, double y);

// Non-symmetric Robin conditions ∂_y w(-f) = σ₁ w(-f), ∂_y w(f) = -σ₂ w(f).
TransverseMode solve_nonsymmetric(double f_val, double sigma1, double sigma2);

// Principal eigenvalue with Neumann at one end and Dirichlet at the other:
// π² / (16 f²).
double dn_lowest_mode(double f_val);

}  // namespace cusplab
