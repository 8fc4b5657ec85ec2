#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fluxcf/errors.hpp"
#include "fluxcf/flux1d.hpp"
#include "fluxcf/mesh.hpp"
#include "fluxcf/poisson.hpp"

namespace fluxcf {

/// Tridiagonal finite-volume balance for the interior unknowns.
struct TridiagonalSystem {
  std::vector<double> sub;    // size n, sub[0] unused
  std::vector<double> diag;   // size n
  std::vector<double> super;  // size n, super[n-1] unused
  std::vector<double> rhs;    // size n
};

/// Thomas elimination. Throws solver_error on a vanishing pivot.
inline std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
  const size_t n = sys.diag.size();
  if (sys.sub.size() != n || sys.super.size() != n || sys.rhs.size() != n)
    throw config_error("solve_tridiagonal: inconsistent dimensions");
  std::vector<double> c(n), d(n);
  if (sys.diag[0] == 0.0) throw solver_error("solve_tridiagonal: zero pivot at row 0");
  c[0] = sys.super[0] / sys.diag[0];
  d[0] = sys.rhs[0] / sys.diag[0];
  for (size_t i = 1; i < n; ++i) {
    const double m = sys.diag[i] - sys.sub[i] * c[i - 1];
    if (m == 0.0) throw solver_error("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    c[i] = sys.super[i] / m;
    d[i] = (sys.rhs[i] - sys.sub[i] * d[i - 1]) / m;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

/// Nodal solution including the Dirichlet boundary entries.
struct DiscreteSolution1D {
  std::vector<double> c;  // size n_nodes
};

/// Stencil of interface i (between nodes i and i+1) for the given variant.
inline FluxStencil interface_stencil_1d(const Mesh1D& mesh, const InterfaceVelocityField1D& vel,
                                        int i, FluxVariant variant, double mu, double diffusion) {
  const PecletData p = peclet_data(vel.v[i], vel.dvdx[i], mesh.dx, mu, diffusion);
  return select_stencil(variant, p, diffusion, mesh.dx);
}

/** @brief Assemble the finite-volume balance f_{j+1/2} - f_{j-1/2} = dx*s_j
 * for the interior nodes.
 *
 * Known boundary values and all source-weight terms are moved to the
 * right-hand side. Source values are point evaluations at the nodes.
 */
inline TridiagonalSystem assemble_1d(const Mesh1D& mesh, const InterfaceVelocityField1D& vel,
                                     std::span<const double> source, std::pair<double, double> bc,
                                     FluxVariant variant, double mu, double diffusion) {
  if (!(diffusion > 0.0)) throw config_error("assemble_1d: diffusion must be positive");
  const int nn = mesh.n_nodes();
  if (static_cast<int>(source.size()) != nn)
    throw config_error("assemble_1d: source must have one value per node");
  if (static_cast<int>(vel.v.size()) != mesh.n_interfaces())
    throw config_error("assemble_1d: velocity field size mismatch");

  const int n = nn - 2;
  TridiagonalSystem sys;
  sys.sub.assign(n, 0.0);
  sys.diag.assign(n, 0.0);
  sys.super.assign(n, 0.0);
  sys.rhs.assign(n, 0.0);

  std::vector<FluxStencil> st(mesh.n_interfaces());
  for (int i = 0; i < mesh.n_interfaces(); ++i) {
    try {
      st[i] = interface_stencil_1d(mesh, vel, i, variant, mu, diffusion);
    } catch (const scheme_error& e) {
      throw scheme_error("interface " + std::to_string(i) + ": " + e.what());
    }
  }

  for (int j = 1; j < nn - 1; ++j) {
    const FluxStencil& fp = st[j];      // interface j+1/2
    const FluxStencil& fm = st[j - 1];  // interface j-1/2
    const int r = j - 1;
    sys.diag[r] = fp.a_left - fm.a_right;
    if (r > 0) sys.sub[r] = -fm.a_left;
    if (r < n - 1) sys.super[r] = fp.a_right;
    sys.rhs[r] = mesh.dx * source[j] - (fp.b_left * source[j] + fp.b_right * source[j + 1]) +
                 (fm.b_left * source[j - 1] + fm.b_right * source[j]);
    if (j == 1) sys.rhs[r] += fm.a_left * bc.first;
    if (j == nn - 2) sys.rhs[r] -= fp.a_right * bc.second;
  }
  return sys;
}

/// Assemble, solve, and attach the boundary values.
inline DiscreteSolution1D solve_transport_1d(const Mesh1D& mesh,
                                             const InterfaceVelocityField1D& vel,
                                             std::span<const double> source,
                                             std::pair<double, double> bc, FluxVariant variant,
                                             double mu, double diffusion) {
  const TridiagonalSystem sys = assemble_1d(mesh, vel, source, bc, variant, mu, diffusion);
  const std::vector<double> interior = solve_tridiagonal(sys);
  DiscreteSolution1D out;
  out.c.assign(mesh.n_nodes(), 0.0);
  out.c.front() = bc.first;
  out.c.back() = bc.second;
  for (size_t i = 0; i < interior.size(); ++i) out.c[i + 1] = interior[i];
  return out;
}

}  // namespace fluxcf
