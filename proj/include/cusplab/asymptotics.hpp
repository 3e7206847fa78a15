#pragma once

#include <string>
#include <vector>

#include "cusplab/profiles.hpp"

namespace cusplab {

struct SpectralPrediction {
  double lambda = 0.0;
  double weyl_part = 0.0;
  double h_sigma_part = 0.0;
  double dirichlet_superlinear_part = 0.0;
  double total = 0.0;
  WeylRegime regime = WeylRegime::Inconclusive;
  std::string h_sigma_source;      // "closed-form" | "titchmarsh"
  double linear_coefficient = 0.0; // |Ω|/(4π) + |a|/(4√σ) in the linear regime
};

enum class TitchmarshVerdict { Titchmarsh, Convex, Inconclusive };

// λ |Ω| / (4π); volume must be finite.
double weyl_term(double volume, double lambda);

// (1/π) ∫_a^{x*} (λ - q)^{1/2} dx with q(x*) = λ; square-root vanishing at
// the turning point handled by the substitution x = x* - u².
double titchmarsh_count(const RealFn& q, double lambda, double a);

// Tail trend check: q' > 0 with x³ q' growing, or q'' >= 0.
TitchmarshVerdict titchmarsh_applicable(const RealFn& q,
                                        const std::vector<double>& probe_grid);

double lgamma_fn(double x);                 // log Γ, Lanczos approximation
double beta_fn(double a, double b);         // Euler beta, a, b > 0
double zeta_fn(double s);                   // Riemann zeta, s > 1

// σ₀^{-1/(α-β)} / ((α-β) π) · B(1/(α-β), 3/2) · λ^{1/2 + 1/(α-β)}.
double hsigma_closed_form(double alpha, double beta, double sigma0,
                          double lambda);

// α < 1: (1/π)(2/π)^{1/α} ζ(1/α) B(1 + 1/(2α), 1/2) λ^{1/2 + 1/(2α)};
// α = 1: (1/π) λ log λ.
double dirichlet_superlinear(double alpha, double lambda);

SpectralPrediction composite_prediction(const CuspProfile& p,
                                        const BoundaryCoefficient& s,
                                        double lambda);

// Solves f(x_λ) = π / (4 √λ).
double dn_threshold_x(const CuspProfile& p, double lambda);

}  // namespace cusplab
