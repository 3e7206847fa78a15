#include "cusplab/laplace2d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cusplab {

namespace {

std::vector<double> geometric_nodes(double a, double X, int nx) {
  std::vector<double> x(nx + 1);
  const double ratio = std::pow(X / a, 1.0 / nx);
  double v = a;
  for (int i = 0; i <= nx; ++i, v *= ratio) x[i] = v;
  x.front() = a;
  x.back() = X;
  return x;
}

std::vector<double> uniform_nodes(double a, double X, int nx) {
  std::vector<double> x(nx + 1);
  for (int i = 0; i <= nx; ++i) x[i] = a + (X - a) * i / nx;
  return x;
}

enum class FormKind { Robin, PureB };

GeneralizedPencil assemble_impl(const CuspProfile& p,
                                const BoundaryCoefficient* s,
                                const MappedMesh& mesh, const EdgeBcs& bcs,
                                FormKind form) {
  const int nx = mesh.nx();
  const int nt = mesh.nt();
  if (nx < 1 || nt < 1) throw std::invalid_argument("assemble: empty mesh");
  for (double x : mesh.x_nodes) {
    if (!(p.f(x) > 0.0)) throw std::domain_error("assemble: f <= 0 on the mesh");
  }

  // Node numbering with t fastest; Dirichlet edges eliminated.
  const int stride = nt + 1;
  std::vector<int> idx((nx + 1) * stride, -1);
  int ndof = 0;
  for (int ix = 0; ix <= nx; ++ix) {
    for (int it = 0; it <= nt; ++it) {
      const bool drop = (ix == 0 && bcs.left == EdgeBc::Dirichlet) ||
                        (ix == nx && bcs.right == EdgeBc::Dirichlet) ||
                        (it == 0 && bcs.bottom == EdgeBc::Dirichlet) ||
                        (it == nt && bcs.top == EdgeBc::Dirichlet);
      if (!drop) idx[ix * stride + it] = ndof++;
    }
  }
  if (ndof == 0) throw std::invalid_argument("assemble: no degrees of freedom");

  const int bw = std::min(ndof - 1, stride + 1);
  GeneralizedPencil pencil;
  pencil.K = BandedMatrix(ndof, bw);
  pencil.M = BandedMatrix(ndof, bw);
  pencil.mesh = mesh;
  pencil.bcs = bcs;

  const double g = 1.0 / std::sqrt(3.0);
  const double gp[2] = {-g, g};

  for (int ix = 0; ix < nx; ++ix) {
    const double x0 = mesh.x_nodes[ix], x1 = mesh.x_nodes[ix + 1];
    const double dx = x1 - x0;
    for (int it = 0; it < nt; ++it) {
      const double t0 = mesh.t_nodes[it], t1 = mesh.t_nodes[it + 1];
      const double dt = t1 - t0;
      // local node order: (x0,t0), (x1,t0), (x0,t1), (x1,t1)
      const int nodes[4] = {ix * stride + it, (ix + 1) * stride + it,
                            ix * stride + it + 1, (ix + 1) * stride + it + 1};
      double ke[4][4] = {}, me[4][4] = {};
      for (double xi : gp) {
        for (double eta : gp) {
          const double x = 0.5 * (x0 + x1) + 0.5 * dx * xi;
          const double t = 0.5 * (t0 + t1) + 0.5 * dt * eta;
          const double N[4] = {0.25 * (1 - xi) * (1 - eta),
                               0.25 * (1 + xi) * (1 - eta),
                               0.25 * (1 - xi) * (1 + eta),
                               0.25 * (1 + xi) * (1 + eta)};
          const double dNx[4] = {-0.25 * (1 - eta) * 2 / dx,
                                 0.25 * (1 - eta) * 2 / dx,
                                 -0.25 * (1 + eta) * 2 / dx,
                                 0.25 * (1 + eta) * 2 / dx};
          const double dNt[4] = {-0.25 * (1 - xi) * 2 / dt,
                                 -0.25 * (1 + xi) * 2 / dt,
                                 0.25 * (1 - xi) * 2 / dt,
                                 0.25 * (1 + xi) * 2 / dt};
          const double wq = 0.25 * dx * dt;
          const double f = p.f(x);
          const double inv_f2 = 1.0 / (f * f);
          if (form == FormKind::Robin) {
            const double r = p.f1(x) / f;
            double gx[4];
            for (int i = 0; i < 4; ++i) gx[i] = dNx[i] - t * r * dNt[i];
            for (int i = 0; i < 4; ++i) {
              for (int j = 0; j <= i; ++j) {
                ke[i][j] += wq * f * (gx[i] * gx[j] + inv_f2 * dNt[i] * dNt[j]);
                me[i][j] += wq * f * N[i] * N[j];
              }
            }
          } else {
            for (int i = 0; i < 4; ++i) {
              for (int j = 0; j <= i; ++j) {
                ke[i][j] += wq * (dNx[i] * dNx[j] + inv_f2 * dNt[i] * dNt[j]);
                me[i][j] += wq * N[i] * N[j];
              }
            }
          }
        }
      }
      for (int i = 0; i < 4; ++i) {
        const int gi = idx[nodes[i]];
        if (gi < 0) continue;
        for (int j = 0; j <= i; ++j) {
          const int gj = idx[nodes[j]];
          if (gj < 0) continue;
          pencil.K.add(gi, gj, ke[i][j]);
          pencil.M.add(gi, gj, me[i][j]);
        }
      }
    }
  }

  // Robin line integrals along t = ±1 (trapezoidal, diagonal).
  if (form == FormKind::Robin && s != nullptr) {
    auto edge_weight = [&mesh, nx](int ix) {
      double w = 0.0;
      if (ix > 0) w += 0.5 * (mesh.x_nodes[ix] - mesh.x_nodes[ix - 1]);
      if (ix < nx) w += 0.5 * (mesh.x_nodes[ix + 1] - mesh.x_nodes[ix]);
      return w;
    };
    const BoundaryCoefficient* upper = s->pair_mode() ? s->second.get() : s;
    for (int ix = 0; ix <= nx; ++ix) {
      const double x = mesh.x_nodes[ix];
      if (bcs.bottom == EdgeBc::Robin) {
        const int gi = idx[ix * stride + 0];
        if (gi >= 0) pencil.K.add(gi, gi, s->sigma(x) * edge_weight(ix));
      }
      if (bcs.top == EdgeBc::Robin) {
        const int gi = idx[ix * stride + nt];
        if (gi >= 0) pencil.K.add(gi, gi, upper->sigma(x) * edge_weight(ix));
      }
    }
  }

  return pencil;
}

MappedMesh sub_mesh(const MappedMesh& mesh, int lo, int hi) {
  MappedMesh m;
  m.x_nodes.assign(mesh.x_nodes.begin() + lo, mesh.x_nodes.begin() + hi + 1);
  m.t_nodes = mesh.t_nodes;
  return m;
}

}  // namespace

long BandedMatrix::negative_pivots(double tiny) {
  long neg = 0;
  std::vector<double> col(bw_ + 1);
  for (int j = 0; j < n_; ++j) {
    double* cj = &a_[(size_t)j * (bw_ + 1)];
    const double d = cj[0];
    if (std::abs(d) < tiny) return -1;
    if (d < 0.0) ++neg;
    const int m = std::min(bw_, n_ - 1 - j);
    for (int r = 1; r <= m; ++r) col[r] = cj[r];
    // rank-one update of the trailing band block
    for (int r = 1; r <= m; ++r) {
      const double lr = col[r] / d;
      double* ci = &a_[(size_t)(j + r) * (bw_ + 1)];
      for (int c = r; c <= m; ++c) ci[c - r] -= lr * col[c];
    }
  }
  return neg;
}

BandedMatrix BandedMatrix::minus_scaled(const BandedMatrix& other, double c) const {
  if (other.n_ != n_ || other.bw_ != bw_)
    throw std::invalid_argument("minus_scaled: shape mismatch");
  BandedMatrix out = *this;
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] -= c * other.a_[i];
  return out;
}

MappedMesh make_mesh(const CuspProfile& p, double X, int nx, int nt) {
  if (nx < 8 || nt < 8) throw std::invalid_argument("make_mesh: need nx, nt >= 8");
  if (!(X > p.a)) throw std::invalid_argument("make_mesh: need X > a");
  MappedMesh m;
  const bool geometric =
      (p.kind == ProfileKind::PowerLaw || p.kind == ProfileKind::Table) && p.a > 0.0;
  m.x_nodes = geometric ? geometric_nodes(p.a, X, nx) : uniform_nodes(p.a, X, nx);
  m.t_nodes = uniform_nodes(-1.0, 1.0, nt);
  return m;
}

MappedMesh make_split_mesh(const CuspProfile& p, double X, int nx, int nt,
                           double split_x) {
  if (!(split_x > p.a) || !(split_x < X))
    throw std::invalid_argument("make_split_mesh: split outside (a, X)");
  MappedMesh m = make_mesh(p, X, nx, nt);
  const auto it = std::min_element(
      m.x_nodes.begin() + 1, m.x_nodes.end() - 1, [split_x](double u, double v) {
        return std::abs(u - split_x) < std::abs(v - split_x);
      });
  *it = split_x;
  return m;
}

GeneralizedPencil assemble_robin(const CuspProfile& p,
                                 const BoundaryCoefficient& s,
                                 const MappedMesh& mesh, const EdgeBcs& bcs) {
  return assemble_impl(p, &s, mesh, bcs, FormKind::Robin);
}

GeneralizedPencil assemble_B(const CuspProfile& p, const MappedMesh& mesh) {
  EdgeBcs bcs;
  bcs.top = bcs.bottom = EdgeBc::Dirichlet;
  return assemble_impl(p, nullptr, mesh, bcs, FormKind::PureB);
}

GeneralizedPencil assemble_dn(const CuspProfile& p, const MappedMesh& mesh) {
  EdgeBcs bcs;
  bcs.top = EdgeBc::Dirichlet;
  bcs.bottom = EdgeBc::Neumann;
  const BoundaryCoefficient zero = make_constant_sigma(0.0);
  return assemble_impl(p, &zero, mesh, bcs, FormKind::Robin);
}

CountResult count_below_2d(const GeneralizedPencil& pencil, double lambda) {
  CountResult r;
  r.lambda = lambda;
  r.method = "count2d";
  r.a = pencil.mesh.x_nodes.front();
  r.X = pencil.mesh.x_nodes.back();
  r.n = pencil.K.rows();
  double lam = lambda;
  for (int attempt = 0; attempt < 4; ++attempt) {
    BandedMatrix C = pencil.K.minus_scaled(pencil.M, lam);
    const long neg = C.negative_pivots(1e-280);
    if (neg >= 0) {
      r.count = neg;
      r.shift_applied = lam - lambda;
      return r;
    }
    lam -= 1e-9 * (1.0 + std::abs(lambda));
  }
  throw std::runtime_error("count_below_2d: factorization breakdown after shifts");
}

BracketingResult bracketing_check(const CuspProfile& p,
                                  const BoundaryCoefficient& s,
                                  const MappedMesh& mesh, double split_x,
                                  double lambda) {
  int si = -1;
  for (size_t i = 1; i + 1 < mesh.x_nodes.size(); ++i) {
    if (mesh.x_nodes[i] == split_x) {
      si = static_cast<int>(i);
      break;
    }
  }
  if (si < 0)
    throw std::invalid_argument("bracketing_check: split_x is not a mesh node");

  const EdgeBcs base;  // Dirichlet x-ends, Robin top/bottom
  BracketingResult out;
  out.middle = count_below_2d(assemble_robin(p, s, mesh, base), lambda).count;

  const MappedMesh left = sub_mesh(mesh, 0, si);
  const MappedMesh right = sub_mesh(mesh, si, mesh.nx());
  // A one-cell piece with Dirichlet ends has no unknowns and contributes 0.
  auto piece_count = [&](const MappedMesh& m, const EdgeBcs& b) -> long {
    if (m.nx() < 2 && b.left == EdgeBc::Dirichlet && b.right == EdgeBc::Dirichlet)
      return 0;
    return count_below_2d(assemble_robin(p, s, m, b), lambda).count;
  };
  for (EdgeBc iface : {EdgeBc::Dirichlet, EdgeBc::Neumann}) {
    EdgeBcs lb = base, rb = base;
    lb.right = iface;
    rb.left = iface;
    (iface == EdgeBc::Dirichlet ? out.lower : out.upper) =
        piece_count(left, lb) + piece_count(right, rb);
  }
  return out;
}

}  // namespace cusplab
