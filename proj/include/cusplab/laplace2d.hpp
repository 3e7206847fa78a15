#pragma once

#include <vector>

#include "cusplab/profiles.hpp"
#include "cusplab/schrodinger1d.hpp"

namespace cusplab {

// Tensor-product mesh in mapped coordinates (x, t), t = y / f(x).
struct MappedMesh {
  std::vector<double> x_nodes;  // strictly increasing on [a, X]
  std::vector<double> t_nodes;  // uniform on [-1, 1]
  int nx() const { return static_cast<int>(x_nodes.size()) - 1; }
  int nt() const { return static_cast<int>(t_nodes.size()) - 1; }
};

// Geometric x-spacing for cusp profiles (uniform for exponential/constant
// kinds), uniform t-spacing.
MappedMesh make_mesh(const CuspProfile& p, double X, int nx, int nt);

// Same, with split_x snapped onto the nearest interior x-node.
MappedMesh make_split_mesh(const CuspProfile& p, double X, int nx, int nt,
                           double split_x);

enum class EdgeBc { Robin, Dirichlet, Neumann };

struct EdgeBcs {
  EdgeBc left = EdgeBc::Dirichlet;
  EdgeBc right = EdgeBc::Dirichlet;
  EdgeBc top = EdgeBc::Robin;
  EdgeBc bottom = EdgeBc::Robin;
};

// Symmetric banded matrix, lower storage: entry (i, j) with 0 <= i-j <= bw.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(int n, int bw) : n_(n), bw_(bw), a_((size_t)n * (bw + 1), 0.0) {}

  int rows() const { return n_; }
  int bandwidth() const { return bw_; }

  double get(int i, int j) const {
    if (i < j) std::swap(i, j);
    return (i - j > bw_) ? 0.0 : a_[(size_t)j * (bw_ + 1) + (i - j)];
  }
  void add(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    a_[(size_t)j * (bw_ + 1) + (i - j)] += v;
  }

  // Negative pivots of the in-place LDLᵀ (no pivoting; congruence preserves
  // inertia). Returns -1 when a pivot magnitude drops below `tiny`.
  long negative_pivots(double tiny = 1e-300);

  // this - c * other; shapes must match.
  BandedMatrix minus_scaled(const BandedMatrix& other, double c) const;

 private:
  int n_ = 0, bw_ = 0;
  std::vector<double> a_;
};

struct GeneralizedPencil {
  BandedMatrix K;
  BandedMatrix M;
  MappedMesh mesh;
  EdgeBcs bcs;
};

// Weak form of the Robin Laplacian in mapped coordinates:
//   K = ∬ [ (∂ₓu - t (f'/f) ∂ₜu)² + f⁻² (∂ₜu)² ] f dx dt
//       + ∫ σ₁ u(x,-1)² dx + ∫ σ₂ u(x,1)² dx,     M = ∬ u² f dx dt.
// Bilinear elements, 2x2 Gauss per cell, trapezoidal edge quadrature.
GeneralizedPencil assemble_robin(const CuspProfile& p,
                                 const BoundaryCoefficient& s,
                                 const MappedMesh& mesh, const EdgeBcs& bcs);

// Comparison operator B = -∂ₓ² - f⁻² ∂ₜ² on the rectangle, all-Dirichlet,
// unit mass weight and no cross term.
GeneralizedPencil assemble_B(const CuspProfile& p, const MappedMesh& mesh);

// Robin assembly with Dirichlet top edge and Neumann bottom edge.
GeneralizedPencil assemble_dn(const CuspProfile& p, const MappedMesh& mesh);

// Negative pivots of K - λM; exact inertia count for the discrete pencil.
CountResult count_below_2d(const GeneralizedPencil& pencil, double lambda);

struct BracketingResult {
  long lower = 0;   // Dirichlet interface split
  long middle = 0;  // unsplit
  long upper = 0;   // Neumann interface split
};

// Dirichlet/Neumann interface bracketing at x = split_x (must be a mesh
// node): lower <= middle <= upper on the shared mesh.
BracketingResult bracketing_check(const CuspProfile& p,
                                  const BoundaryCoefficient& s,
                                  const MappedMesh& mesh, double split_x,
                                  double lambda);

}  // namespace cusplab
