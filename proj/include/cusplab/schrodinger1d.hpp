#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cusplab/profiles.hpp"

namespace cusplab {

enum class Bc { Dirichlet, Neumann };

// Uniform grid on (a, X) with n interior nodes, spacing h = (X-a)/(n+1).
struct Grid1D {
  double a = 0.0;
  double X = 0.0;
  int n = 0;
  double h = 0.0;
  double node(int i) const { return a + (i + 1) * h; }  // i in [0, n)
};

// Symmetric tridiagonal discretization of -d²/dx² + q with the standard
// second-order stencil; Neumann ends use ghost-node reflection.
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;
  Bc bc_left = Bc::Dirichlet;
  Bc bc_right = Bc::Dirichlet;
  double h = 0.0;
};

struct CountResult {
  double lambda = 0.0;
  long count = 0;
  std::string method;
  double a = 0.0;
  double X = 0.0;
  double h = 0.0;
  int n = 0;
  double shift_applied = 0.0;
  int modes_used = 0;  // mode-sum routes only
};

// Truncation rule: X = 2 * (first x with q(x) >= 4 lambda_max);
// h <= 2π / (resolution * sqrt(lambda_max)).
Grid1D build_grid(double a, double lambda_max, const RealFn& q,
                  double resolution = 10.0);

// Explicit truncation with a target spacing.
Grid1D make_grid(double a, double X, double h_target);

TridiagonalOperator assemble(const Grid1D& grid, const RealFn& q, Bc bc_left,
                             Bc bc_right);

// Number of eigenvalues of T strictly below lambda, by the negative-pivot
// count of the LDLᵀ Sturm sequence of T - λI. Near-zero pivots trigger a
// recorded λ shift of 1e-9 (1 + |λ|).
CountResult count_below(const TridiagonalOperator& T, double lambda);

// k-th smallest eigenvalue (k >= 1) by bisection on count_below.
double eigenvalue_k(const TridiagonalOperator& T, int k);

// W_σ + k²π²/(4 f²) for k >= 1; W_σ itself for k = 0.
RealFn mode_potential(const CuspProfile& p, const BoundaryCoefficient& s, int k);

// π²k²/(4 f²), the mode potentials of the Dirichlet comparison operator.
RealFn dirichlet_mode_potential(const CuspProfile& p, int k);

struct ModeSumOptions {
  Bc bc_left = Bc::Dirichlet;
  Bc bc_right = Bc::Dirichlet;
  double resolution = 10.0;
  std::optional<double> X_override;  // fixed truncation for all modes
  int max_modes = 4096;
};

// Sums count_below over transverse modes; dirichlet_variant starts at k = 1
// and drops W_σ. Stops at the first mode whose potential infimum exceeds λ.
CountResult mode_sum_count(const CuspProfile& p, const BoundaryCoefficient& s,
                           bool dirichlet_variant, double lambda, double a,
                           const ModeSumOptions& opts = {});

// max over the sweep of |N^Neumann - N^Dirichlet| outside {0, 1}; contract 0.
int rank_one_check(const RealFn& q, const std::vector<double>& lambda_sweep,
                   double a, double resolution = 10.0);

}  // namespace cusplab
