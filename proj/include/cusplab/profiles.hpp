#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cusplab/numerics.hpp"

namespace cusplab {

enum class ProfileKind { PowerLaw, Exponential, Constant, Table };

// Half-width function f of the cusp domain {x > a, |y| < f(x)},
// with analytic first and second derivatives.
struct CuspProfile {
  double a = 1.0;
  ProfileKind kind = ProfileKind::PowerLaw;
  double param = 0.0;  // alpha (power), c (exponential), v (constant)
  RealFn f, f1, f2;
  std::optional<double> tail_integral_hint;  // exact value of ∫_a^∞ f
};

enum class SigmaKind { Constant, PowerLaw, Table };

// Robin boundary weight σ with derivatives. In pair mode `second` holds σ₂
// (the upper boundary) and the primary fields describe σ₁; the effective
// symmetric coefficient is the mean of the two.
struct BoundaryCoefficient {
  SigmaKind kind = SigmaKind::Constant;
  double s0 = 0.0;    // constant value, or prefactor of s0 * x^(-beta)
  double beta = 0.0;  // power-law decay rate
  RealFn sigma, sigma1, sigma2_deriv;
  std::shared_ptr<BoundaryCoefficient> second;  // set in pair mode

  bool pair_mode() const { return second != nullptr; }
  double effective_at(double x) const {
    return pair_mode() ? 0.5 * (sigma(x) + second->sigma(x)) : sigma(x);
  }
};

enum class Verdict { Holds, Fails, Inconclusive };

struct AssumptionCheck {
  std::string name;
  std::vector<double> grid;
  std::vector<double> values;
  Verdict verdict = Verdict::Inconclusive;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;
  bool all_hold() const;
  const AssumptionCheck* find(const std::string& name) const;
};

struct LandauCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

enum class WeylRegime { Weyl, Linear, Superlinear, Inconclusive };

// --- profile constructors -------------------------------------------------

CuspProfile make_power_profile(double alpha, double a = 1.0);
CuspProfile make_exponential_profile(double c, double a = 1.0);
CuspProfile make_constant_profile(double v, double a = 1.0);
// Two-column CSV (x, f) with header; interpolated by a monotone cubic.
CuspProfile make_table_profile(const std::string& csv_path);

BoundaryCoefficient make_constant_sigma(double v);
BoundaryCoefficient make_power_sigma(double s0, double beta);
BoundaryCoefficient make_pair_sigma(BoundaryCoefficient s1,
                                    BoundaryCoefficient s2);

// String spec parsers, grammar:
//   "power:alpha=<f>" | "exp:c=<f>" | "const:v=<f>" | "table:<path>"
//   "const:v=<f>" | "powersigma:s=<f>,beta=<f>"
CuspProfile parse_profile_spec(const std::string& spec);
BoundaryCoefficient parse_sigma_spec(const std::string& spec);

// --- operations -----------------------------------------------------------

// V = (1/4)(f'/f)^2 + (1/2)(f'/f)' with (f'/f)' = f''/f - (f'/f)^2.
double eval_V(const CuspProfile& p, double x);

// W_sigma = V + sigma/f (effective sigma in pair mode).
double eval_W(const CuspProfile& p, const BoundaryCoefficient& s, double x);

AssumptionReport audit_assumptions(const CuspProfile& p,
                                   const BoundaryCoefficient& s,
                                   const std::vector<double>& probe_grid);

// (f'(x))^2 <= 2 * sup f * sup |f''| with suprema sampled on a geometric
// grid over [x, 1000 x].
LandauCheck landau_check(const CuspProfile& p, double x, int tail_samples);

// (∫_a^x dt/f) * (∫_x^∞ f); +inf when the tail integral diverges.
double neumann_discreteness_value(const CuspProfile& p, double x);

WeylRegime classify_weyl_regime(const CuspProfile& p);

// Linear-regime coefficient a with x^2 f(x) -> a^2 (power alpha = 2 only).
double linear_regime_a(const CuspProfile& p);

// |Omega| = 2 ∫_a^∞ f; +inf when divergent.
double domain_volume(const CuspProfile& p);

const char* to_string(Verdict v);
const char* to_string(WeylRegime r);

}  // namespace cusplab
