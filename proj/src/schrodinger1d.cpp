#include "cusplab/schrodinger1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cusplab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Negative pivots of the Sturm sequence of T - λI; returns -1 on a
// near-zero pivot (caller shifts λ and retries).
long sturm_negatives(const TridiagonalOperator& T, double lambda) {
  long neg = 0;
  double prev = 1.0;
  const size_t n = T.diag.size();
  for (size_t i = 0; i < n; ++i) {
    double d = T.diag[i] - lambda;
    if (i > 0) d -= T.offdiag[i - 1] * T.offdiag[i - 1] / prev;
    if (std::abs(d) < 1e-300) return -1;
    if (d < 0.0) ++neg;
    prev = d;
  }
  return neg;
}

}  // namespace

Grid1D build_grid(double a, double lambda_max, const RealFn& q,
                  double resolution) {
  if (resolution < 10.0)
    throw std::invalid_argument("build_grid: resolution must be >= 10");
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("build_grid: lambda_max must be positive");

  const double target = 4.0 * lambda_max;
  double x0;
  try {
    const double start = (a > 0.0) ? a : std::max(a + 1e-3, 1e-3);
    x0 = geometric_scan(q, target, start, 1e6, 1.01);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("build_grid: potential does not confine");
  }
  const double X = 2.0 * x0;
  const double h_max = 2.0 * kPi / (resolution * std::sqrt(lambda_max));
  return make_grid(a, X, h_max);
}

Grid1D make_grid(double a, double X, double h_target) {
  if (!(X > a) || !(h_target > 0.0))
    throw std::invalid_argument("make_grid: need X > a and h > 0");
  Grid1D g;
  g.a = a;
  g.X = X;
  g.n = std::max(16, static_cast<int>(std::ceil((X - a) / h_target)) - 1);
  g.h = (X - a) / (g.n + 1);
  return g;
}

TridiagonalOperator assemble(const Grid1D& grid, const RealFn& q, Bc bc_left,
                             Bc bc_right) {
  TridiagonalOperator T;
  T.h = grid.h;
  T.bc_left = bc_left;
  T.bc_right = bc_right;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  T.diag.resize(grid.n);
  T.offdiag.assign(grid.n - 1, -inv_h2);
  for (int i = 0; i < grid.n; ++i) T.diag[i] = 2.0 * inv_h2 + q(grid.node(i));
  if (bc_left == Bc::Neumann) T.diag.front() -= inv_h2;   // ghost reflection
  if (bc_right == Bc::Neumann) T.diag.back() -= inv_h2;
  return T;
}

CountResult count_below(const TridiagonalOperator& T, double lambda) {
  CountResult r;
  r.lambda = lambda;
  r.method = "count1d";
  r.n = static_cast<int>(T.diag.size());
  r.h = T.h;
  double lam = lambda;
  for (int attempt = 0; attempt < 50; ++attempt) {
    const long neg = sturm_negatives(T, lam);
    if (neg >= 0) {
      r.count = neg;
      r.shift_applied = lam - lambda;
      return r;
    }
    lam -= 1e-9 * (1.0 + std::abs(lambda));  // tie with a pivot: nudge below
  }
  throw std::runtime_error("count_below: persistent zero pivot");
}

double eigenvalue_k(const TridiagonalOperator& T, int k) {
  const int n = static_cast<int>(T.diag.size());
  if (k < 1 || k > n) throw std::invalid_argument("eigenvalue_k: k out of range");
  const double off = 2.0 / (T.h * T.h);
  double lo = *std::min_element(T.diag.begin(), T.diag.end()) - off;
  double hi = *std::max_element(T.diag.begin(), T.diag.end()) + off;
  while (hi - lo > 1e-12 * (1.0 + std::abs(lo) + std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(T, mid).count >= k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RealFn mode_potential(const CuspProfile& p, const BoundaryCoefficient& s, int k) {
  if (k < 0) throw std::invalid_argument("mode_potential: k must be >= 0");
  if (k == 0) {
    return [p, s](double x) { return eval_W(p, s, x); };
  }
  const double k2p2 = k * k * kPi * kPi / 4.0;
  return [p, s, k2p2](double x) {
    const double f = p.f(x);
    return eval_W(p, s, x) + k2p2 / (f * f);
  };
}

RealFn dirichlet_mode_potential(const CuspProfile& p, int k) {
  if (k < 1) throw std::invalid_argument("dirichlet_mode_potential: k must be >= 1");
  const double k2p2 = k * k * kPi * kPi / 4.0;
  return [p, k2p2](double x) {
    const double f = p.f(x);
    return k2p2 / (f * f);
  };
}

CountResult mode_sum_count(const CuspProfile& p, const BoundaryCoefficient& s,
                           bool dirichlet_variant, double lambda, double a,
                           const ModeSumOptions& opts) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("mode_sum_count: lambda must be positive");

  CountResult total;
  total.lambda = lambda;
  total.method = dirichlet_variant ? "modesum-B" : "modesum";
  total.a = a;

  auto potential_inf = [&](const RealFn& q, double X) {
    // Sample on a geometric grid; the presets are unimodal so this is a
    // reliable proxy for the infimum.
    double lo = std::numeric_limits<double>::infinity();
    const int samples = 512;
    const double ratio = std::pow(X / a, 1.0 / (samples - 1));
    double x = a;
    for (int i = 0; i < samples; ++i, x *= ratio) lo = std::min(lo, q(std::min(x, X)));
    return lo;
  };

  const int k0 = dirichlet_variant ? 1 : 0;
  for (int k = k0; k < opts.max_modes + k0; ++k) {
    const RealFn q = dirichlet_variant ? dirichlet_mode_potential(p, k)
                                       : mode_potential(p, s, k);
    Grid1D grid;
    if (opts.X_override) {
      const double h_max = 2.0 * kPi / (opts.resolution * std::sqrt(lambda));
      grid = make_grid(a, *opts.X_override, h_max);
    } else {
      grid = build_grid(a, lambda, q, opts.resolution);
    }
    if (potential_inf(q, grid.X) > lambda) break;  // every later mode is higher

    const TridiagonalOperator T = assemble(grid, q, opts.bc_left, opts.bc_right);
    const CountResult r = count_below(T, lambda);
    total.count += r.count;
    total.modes_used = k - k0 + 1;
    total.X = std::max(total.X, grid.X);
    total.h = grid.h;
    total.n = grid.n;
    if (r.shift_applied != 0.0) total.shift_applied = r.shift_applied;
  }
  return total;
}

int rank_one_check(const RealFn& q, const std::vector<double>& lambda_sweep,
                   double a, double resolution) {
  if (lambda_sweep.empty())
    throw std::invalid_argument("rank_one_check: empty sweep");
  const double lambda_max =
      *std::max_element(lambda_sweep.begin(), lambda_sweep.end());
  const Grid1D grid = build_grid(a, lambda_max, q, resolution);
  const TridiagonalOperator TN = assemble(grid, q, Bc::Neumann, Bc::Dirichlet);
  const TridiagonalOperator TD = assemble(grid, q, Bc::Dirichlet, Bc::Dirichlet);
  int worst = 0;
  for (double lam : lambda_sweep) {
    const long d = count_below(TN, lam).count - count_below(TD, lam).count;
    if (d < 0 || d > 1) worst = std::max<int>(worst, static_cast<int>(std::abs(d)));
  }
  return worst;
}

}  // namespace cusplab
