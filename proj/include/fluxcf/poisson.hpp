#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fluxcf/detail/lapack.hpp"
#include "fluxcf/errors.hpp"
#include "fluxcf/mesh.hpp"

namespace fluxcf {

/// Nodal potential on a Mesh1D; boundary entries carry the Dirichlet data.
struct PotentialField1D {
  std::vector<double> phi;  // size n_nodes
};

/// Normal velocity and its derivative at every interface of a Mesh1D.
struct InterfaceVelocityField1D {
  std::vector<double> v;     // size n_interfaces
  std::vector<double> dvdx;  // size n_interfaces
};

/** @brief Central-difference solve of -phi'' = s_P with Dirichlet data.
 *
 * Interior nodes satisfy -(phi_{j+1} - 2 phi_j + phi_{j-1})/dx^2 = s_P(x_j)
 * to solver round-off; the tridiagonal system is SPD and solved by the
 * Thomas algorithm.
 */
inline PotentialField1D solve_poisson_1d(const Mesh1D& mesh, std::span<const double> source,
                                         std::pair<double, double> bc) {
  const int nn = mesh.n_nodes();
  if (static_cast<int>(source.size()) != nn)
    throw config_error("solve_poisson_1d: source must have one value per node");
  const int n = nn - 2;
  const double h2 = mesh.dx * mesh.dx;
  std::vector<double> c(n), d(n);
  // forward elimination for the constant (-1, 2, -1) system
  c[0] = -0.5;
  d[0] = (h2 * source[1] + bc.first) / 2.0;
  for (int i = 1; i < n; ++i) {
    double rhs = h2 * source[i + 1];
    if (i == n - 1) rhs += bc.second;
    const double m = 2.0 + c[i - 1];
    c[i] = -1.0 / m;
    d[i] = (rhs + d[i - 1]) / m;
  }
  PotentialField1D out;
  out.phi.assign(nn, 0.0);
  out.phi[0] = bc.first;
  out.phi[nn - 1] = bc.second;
  out.phi[n] = d[n - 1];
  for (int i = n - 2; i >= 0; --i) out.phi[i + 1] = d[i] - c[i] * out.phi[i + 2];
  return out;
}

/** @brief Interface velocity and derivative from a discrete potential.
 *
 * v_{j+1/2} = -(phi_{j+1} - phi_j)/dx; the derivative equals the Poisson
 * source averaged over the two adjacent control volumes,
 * dvdx_{j+1/2} = (s_P,j + s_P,j+1)/2.
 */
inline InterfaceVelocityField1D reconstruct_velocity_1d(const Mesh1D& mesh,
                                                        const PotentialField1D& field,
                                                        std::span<const double> poisson_source) {
  const int ni = mesh.n_interfaces();
  if (static_cast<int>(field.phi.size()) != mesh.n_nodes() ||
      static_cast<int>(poisson_source.size()) != mesh.n_nodes())
    throw config_error("reconstruct_velocity_1d: size mismatch");
  InterfaceVelocityField1D out;
  out.v.resize(ni);
  out.dvdx.resize(ni);
  for (int i = 0; i < ni; ++i) {
    out.v[i] = -(field.phi[i + 1] - field.phi[i]) / mesh.dx;
    out.dvdx[i] = 0.5 * (poisson_source[i] + poisson_source[i + 1]);
  }
  return out;
}

/// Nodal velocity -phi'(x_j): central differences inside, one-sided
/// second-order at the two boundary nodes.
inline std::vector<double> nodal_velocity_1d(const Mesh1D& mesh, const PotentialField1D& field) {
  const int nn = mesh.n_nodes();
  const auto& p = field.phi;
  std::vector<double> v(nn);
  for (int j = 1; j + 1 < nn; ++j) v[j] = -(p[j + 1] - p[j - 1]) / (2.0 * mesh.dx);
  v[0] = -(-3.0 * p[0] + 4.0 * p[1] - p[2]) / (2.0 * mesh.dx);
  v[nn - 1] = -(3.0 * p[nn - 1] - 4.0 * p[nn - 2] + p[nn - 3]) / (2.0 * mesh.dx);
  return v;
}

/// Boundary-value callable phi(x, y) evaluated at edge midpoints of boundary edges.
using BoundaryFn = std::function<double(double, double)>;

/** @brief Cell-centered potential on a Mesh2D plus the Dirichlet values at
 * boundary edge midpoints used by the solve (kept so velocity reconstruction
 * needs no second look at the boundary data).
 */
struct PotentialField2D {
  std::vector<double> phi;   // nx*ny cell centers
  std::vector<double> west;  // ny values at (0, yc(j))
  std::vector<double> east;  // ny values at (lx, yc(j))
  std::vector<double> south;  // nx values at (xc(i), 0)
  std::vector<double> north;  // nx values at (xc(i), ly)
};

/** @brief Five-point solve of -lap(phi) = s_P on cell centers.
 *
 * Dirichlet data is imposed at boundary edge midpoints through ghost-free
 * half-spacing fluxes, which keeps the matrix SPD; the solve is a banded
 * Cholesky factorization. Throws solver_error if the relative residual
 * exceeds 1e-10.
 */
inline PotentialField2D solve_poisson_2d(const Mesh2D& mesh, std::span<const double> source,
                                         const BoundaryFn& bc) {
  const int nx = mesh.nx, ny = mesh.ny;
  const int n = nx * ny;
  if (static_cast<int>(source.size()) != n)
    throw config_error("solve_poisson_2d: source must have one value per cell");

  PotentialField2D out;
  out.west.resize(ny);
  out.east.resize(ny);
  out.south.resize(nx);
  out.north.resize(nx);
  for (int j = 0; j < ny; ++j) {
    out.west[j] = bc(0.0, mesh.yc(j));
    out.east[j] = bc(mesh.lx, mesh.yc(j));
  }
  for (int i = 0; i < nx; ++i) {
    out.south[i] = bc(mesh.xc(i), 0.0);
    out.north[i] = bc(mesh.xc(i), mesh.ly);
  }

  const double ax = mesh.dy / mesh.dx;  // transmissibilities of the FV fluxes
  const double ay = mesh.dx / mesh.dy;
  detail::SpdBandMatrix A(n, nx);
  std::vector<double> rhs(n, 0.0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int r = mesh.cell_index(i, j);
      double diag = 0.0;
      if (i > 0) {
        diag += ax;
        A.add_upper(r - 1, r, -ax);
      } else {
        diag += 2.0 * ax;
        rhs[r] += 2.0 * ax * out.west[j];
      }
      if (i + 1 < nx) {
        diag += ax;
      } else {
        diag += 2.0 * ax;
        rhs[r] += 2.0 * ax * out.east[j];
      }
      if (j > 0) {
        diag += ay;
        A.add_upper(r - nx, r, -ay);
      } else {
        diag += 2.0 * ay;
        rhs[r] += 2.0 * ay * out.south[i];
      }
      if (j + 1 < ny) {
        diag += ay;
      } else {
        diag += 2.0 * ay;
        rhs[r] += 2.0 * ay * out.north[i];
      }
      A.add_upper(r, r, diag);
      rhs[r] += mesh.dx * mesh.dy * source[r];
    }
  }

  std::vector<double> b0 = rhs;
  A.solve(rhs);
  out.phi = std::move(rhs);

  // residual check against a fresh operator application
  double rnorm = 0.0, bnorm = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int r = mesh.cell_index(i, j);
      const double p = out.phi[r];
      double Ax = 0.0;
      Ax += (i > 0) ? ax * (p - out.phi[r - 1]) : 2.0 * ax * p;
      Ax += (i + 1 < nx) ? ax * (p - out.phi[r + 1]) : 2.0 * ax * p;
      Ax += (j > 0) ? ay * (p - out.phi[r - nx]) : 2.0 * ay * p;
      Ax += (j + 1 < ny) ? ay * (p - out.phi[r + nx]) : 2.0 * ay * p;
      const double res = Ax - b0[r];
      rnorm += res * res;
      bnorm += b0[r] * b0[r];
    }
  }
  if (!(std::sqrt(rnorm) <= 1e-10 * std::sqrt(bnorm) + 1e-30))
    throw solver_error("solve_poisson_2d: residual check failed");
  return out;
}

/** @brief Per-edge normal velocity and normal derivative from a discrete potential.
 *
 * Interior edges difference the two adjacent cell values over the full
 * spacing; boundary edges difference the boundary value and the first cell
 * over the half spacing. The normal derivative central-differences the
 * neighboring parallel edge velocities, reverting to one-sided differences
 * at the first and last interior edges (and at boundary edges, where it is
 * never used because those edges carry alpha = 0).
 */
struct InterfaceVelocityField2D {
  int nx = 0, ny = 0;
  std::vector<double> vx, dvx;  // (nx+1)*ny vertical edges, index j*(nx+1)+i
  std::vector<double> vy, dvy;  // nx*(ny+1) horizontal edges, index j*nx+i

  int xedge(int i, int j) const { return j * (nx + 1) + i; }
  int yedge(int i, int j) const { return j * nx + i; }
};

inline InterfaceVelocityField2D reconstruct_velocity_2d(const Mesh2D& mesh,
                                                        const PotentialField2D& field) {
  const int nx = mesh.nx, ny = mesh.ny;
  InterfaceVelocityField2D out;
  out.nx = nx;
  out.ny = ny;
  out.vx.assign(static_cast<size_t>(nx + 1) * ny, 0.0);
  out.dvx.assign(out.vx.size(), 0.0);
  out.vy.assign(static_cast<size_t>(nx) * (ny + 1), 0.0);
  out.dvy.assign(out.vy.size(), 0.0);

  const auto cell = [&](int i, int j) { return field.phi[mesh.cell_index(i, j)]; };
  for (int j = 0; j < ny; ++j) {
    out.vx[out.xedge(0, j)] = -(cell(0, j) - field.west[j]) / (0.5 * mesh.dx);
    out.vx[out.xedge(nx, j)] = -(field.east[j] - cell(nx - 1, j)) / (0.5 * mesh.dx);
    for (int i = 1; i < nx; ++i)
      out.vx[out.xedge(i, j)] = -(cell(i, j) - cell(i - 1, j)) / mesh.dx;
  }
  for (int i = 0; i < nx; ++i) {
    out.vy[out.yedge(i, 0)] = -(cell(i, 0) - field.south[i]) / (0.5 * mesh.dy);
    out.vy[out.yedge(i, ny)] = -(field.north[i] - cell(i, ny - 1)) / (0.5 * mesh.dy);
    for (int j = 1; j < ny; ++j)
      out.vy[out.yedge(i, j)] = -(cell(i, j) - cell(i, j - 1)) / mesh.dy;
  }

  for (int j = 0; j < ny; ++j) {
    const auto vx = [&](int i) { return out.vx[out.xedge(i, j)]; };
    for (int i = 1; i < nx; ++i) {
      double d;
      if (i == 1)
        d = (vx(2) - vx(1)) / mesh.dx;
      else if (i == nx - 1)
        d = (vx(nx - 1) - vx(nx - 2)) / mesh.dx;
      else
        d = (vx(i + 1) - vx(i - 1)) / (2.0 * mesh.dx);
      out.dvx[out.xedge(i, j)] = d;
    }
    out.dvx[out.xedge(0, j)] = (vx(1) - vx(0)) / mesh.dx;
    out.dvx[out.xedge(nx, j)] = (vx(nx) - vx(nx - 1)) / mesh.dx;
  }
  for (int i = 0; i < nx; ++i) {
    const auto vy = [&](int j) { return out.vy[out.yedge(i, j)]; };
    for (int j = 1; j < ny; ++j) {
      double d;
      if (j == 1)
        d = (vy(2) - vy(1)) / mesh.dy;
      else if (j == ny - 1)
        d = (vy(ny - 1) - vy(ny - 2)) / mesh.dy;
      else
        d = (vy(j + 1) - vy(j - 1)) / (2.0 * mesh.dy);
      out.dvy[out.yedge(i, j)] = d;
    }
    out.dvy[out.yedge(i, 0)] = (vy(1) - vy(0)) / mesh.dy;
    out.dvy[out.yedge(i, ny)] = (vy(ny) - vy(ny - 1)) / mesh.dy;
  }
  return out;
}

}  // namespace fluxcf
