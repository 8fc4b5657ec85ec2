#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fluxcf/detail/lapack.hpp"
#include "fluxcf/errors.hpp"
#include "fluxcf/flux1d.hpp"
#include "fluxcf/mesh.hpp"
#include "fluxcf/poisson.hpp"

namespace fluxcf {

/// Identifies one mesh edge. Axis::X is a vertical edge (east-oriented normal)
/// with i in [0, nx], j in [0, ny-1]; Axis::Y is a horizontal edge
/// (north-oriented) with i in [0, nx-1], j in [0, ny].
struct EdgeRef {
  enum class Axis { X, Y };
  Axis axis;
  int i, j;
};

inline bool is_boundary_edge(const Mesh2D& mesh, EdgeRef e) {
  return e.axis == EdgeRef::Axis::X ? (e.i == 0 || e.i == mesh.nx) : (e.j == 0 || e.j == mesh.ny);
}

/** @brief Peclet data of one edge from the reconstructed velocity field.
 *
 * Interior edges use the full normal spacing. Boundary edges use the half
 * spacing between the boundary midpoint and the first cell center, and carry
 * alpha = 0 (no slope adjustment across the half interval).
 */
inline PecletData edge_peclet_2d(const Mesh2D& mesh, const InterfaceVelocityField2D& vel,
                                 EdgeRef e, double mu, double diffusion) {
  const bool bnd = is_boundary_edge(mesh, e);
  if (e.axis == EdgeRef::Axis::X) {
    const double h = bnd ? 0.5 * mesh.dx : mesh.dx;
    PecletData p = peclet_data(vel.vx[vel.xedge(e.i, e.j)], vel.dvx[vel.xedge(e.i, e.j)], h, mu,
                               diffusion);
    if (bnd) return PecletData{p.pe, p.q, 0.0, p.pe, p.pe};
    return p;
  }
  const double h = bnd ? 0.5 * mesh.dy : mesh.dy;
  PecletData p =
      peclet_data(vel.vy[vel.yedge(e.i, e.j)], vel.dvy[vel.yedge(e.i, e.j)], h, mu, diffusion);
  if (bnd) return PecletData{p.pe, p.q, 0.0, p.pe, p.pe};
  return p;
}

/** @brief Integrated flux through one edge as a linear form
 * F = h_own*c_own + h_nbr*c_nbr + w_own*st_own + w_nbr*st_nbr,
 * where own/nbr are the low/high cells along the edge normal and st are the
 * total-source values of those cells.
 *
 * Interior edges scale the 1D stencil by the transverse face measure. For a
 * boundary edge the outward slot multiplies the Dirichlet value instead of a
 * cell, its w slot is zero, and the interior cell carries the combined source
 * weight shifted by -h/2 (low boundary) or +h/2 (high boundary): the stencil
 * formulas give the flux at the midpoint of the half interval while the edge
 * sits at its endpoint, and f' = st along the interval.
 */
struct EdgeFluxStencil {
  double h_own, h_nbr;
  double w_own, w_nbr;
};

inline EdgeFluxStencil integrated_flux_stencil(const Mesh2D& mesh, EdgeRef e, const PecletData& p,
                                               FluxVariant variant, double diffusion) {
  const bool vertical = e.axis == EdgeRef::Axis::X;
  const double normal = vertical ? mesh.dx : mesh.dy;
  const double face = vertical ? mesh.dy : mesh.dx;
  if (!is_boundary_edge(mesh, e)) {
    const FluxStencil s = select_stencil(variant, p, diffusion, normal);
    return EdgeFluxStencil{face * s.a_left, face * s.a_right, face * s.b_left, face * s.b_right};
  }
  const double h = 0.5 * normal;
  const FluxStencil s = stencil_pwc(p, diffusion, h);
  const bool low_boundary = vertical ? (e.i == 0) : (e.j == 0);
  const double w = s.b_left + s.b_right + (low_boundary ? -0.5 * h : 0.5 * h);
  if (low_boundary)
    return EdgeFluxStencil{face * s.a_left, face * s.a_right, 0.0, face * w};
  return EdgeFluxStencil{face * s.a_left, face * s.a_right, face * w, 0.0};
}

/// All edge stencils of one variant, indexed like the velocity field edges.
struct EdgeStencils2D {
  std::vector<EdgeFluxStencil> x;  // (nx+1)*ny
  std::vector<EdgeFluxStencil> y;  // nx*(ny+1)
};

inline EdgeStencils2D compute_edge_stencils(const Mesh2D& mesh,
                                            const InterfaceVelocityField2D& vel,
                                            FluxVariant variant, double mu, double diffusion) {
  EdgeStencils2D out;
  out.x.resize(static_cast<size_t>(mesh.nx + 1) * mesh.ny);
  out.y.resize(static_cast<size_t>(mesh.nx) * (mesh.ny + 1));
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i <= mesh.nx; ++i) {
      const EdgeRef e{EdgeRef::Axis::X, i, j};
      out.x[vel.xedge(i, j)] =
          integrated_flux_stencil(mesh, e, edge_peclet_2d(mesh, vel, e, mu, diffusion), variant,
                                  diffusion);
    }
  for (int j = 0; j <= mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i) {
      const EdgeRef e{EdgeRef::Axis::Y, i, j};
      out.y[vel.yedge(i, j)] =
          integrated_flux_stencil(mesh, e, edge_peclet_2d(mesh, vel, e, mu, diffusion), variant,
                                  diffusion);
    }
  return out;
}

/** @brief Total source of one cell for one flux direction, kept symbolic in
 * the unknowns: the raw cell source minus the averaged transverse cross flux
 * built from the homogeneous edge coefficients.
 */
struct TotalSource {
  std::array<std::pair<int, double>, 3> terms{};  // (cell index, coefficient)
  int n_terms = 0;
  double constant = 0.0;

  void add(int cell, double coeff) {
    for (int k = 0; k < n_terms; ++k)
      if (terms[k].first == cell) {
        terms[k].second += coeff;
        return;
      }
    terms[n_terms++] = {cell, coeff};
  }
};

struct TotalSourceTable {
  std::vector<TotalSource> x;  // per cell, east/west direction
  std::vector<TotalSource> y;  // per cell, north/south direction
};

/** @brief Build both total-source forms for every cell.
 *
 * st_x = s - (F_N^h + F_S^h)/(dx dy) with outward-oriented homogeneous
 * fluxes (equivalently the north-oriented difference), mirrored for st_y.
 * Boundary-adjacent cells use the half-spacing boundary homogeneous fluxes,
 * whose known Dirichlet parts fold into the constant.
 */
inline TotalSourceTable total_sources(const Mesh2D& mesh, const InterfaceVelocityField2D& vel,
                                      const EdgeStencils2D& st, std::span<const double> source,
                                      const BoundaryFn& bc) {
  const int nx = mesh.nx, ny = mesh.ny;
  const double inv_area = 1.0 / (mesh.dx * mesh.dy);
  TotalSourceTable out;
  out.x.resize(mesh.n_cells());
  out.y.resize(mesh.n_cells());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int c = mesh.cell_index(i, j);
      {  // transverse = north/south edges
        TotalSource t;
        t.constant = source[c];
        for (const auto [je, sgn] : {std::pair{j + 1, 1.0}, std::pair{j, -1.0}}) {
          const EdgeFluxStencil& s = st.y[vel.yedge(i, je)];
          if (je == 0) {
            t.add(mesh.cell_index(i, 0), -sgn * s.h_nbr * inv_area);
            t.constant -= sgn * s.h_own * bc(mesh.xc(i), 0.0) * inv_area;
          } else if (je == ny) {
            t.add(mesh.cell_index(i, ny - 1), -sgn * s.h_own * inv_area);
            t.constant -= sgn * s.h_nbr * bc(mesh.xc(i), mesh.ly) * inv_area;
          } else {
            t.add(mesh.cell_index(i, je - 1), -sgn * s.h_own * inv_area);
            t.add(mesh.cell_index(i, je), -sgn * s.h_nbr * inv_area);
          }
        }
        out.x[c] = t;
      }
      {  // transverse = east/west edges
        TotalSource t;
        t.constant = source[c];
        for (const auto [ie, sgn] : {std::pair{i + 1, 1.0}, std::pair{i, -1.0}}) {
          const EdgeFluxStencil& s = st.x[vel.xedge(ie, j)];
          if (ie == 0) {
            t.add(mesh.cell_index(0, j), -sgn * s.h_nbr * inv_area);
            t.constant -= sgn * s.h_own * bc(0.0, mesh.yc(j)) * inv_area;
          } else if (ie == nx) {
            t.add(mesh.cell_index(nx - 1, j), -sgn * s.h_own * inv_area);
            t.constant -= sgn * s.h_nbr * bc(mesh.lx, mesh.yc(j)) * inv_area;
          } else {
            t.add(mesh.cell_index(ie - 1, j), -sgn * s.h_own * inv_area);
            t.add(mesh.cell_index(ie, j), -sgn * s.h_nbr * inv_area);
          }
        }
        out.y[c] = t;
      }
    }
  }
  return out;
}

/// Nine-point finite-volume balance: one row per cell with coefficients on
/// the 3x3 neighborhood, plus the right-hand side.
struct SparseSystem2D {
  int nx = 0, ny = 0;
  std::vector<std::array<double, 9>> rows;  // slot = (dj+1)*3 + (di+1)
  std::vector<double> rhs;

  static int slot(int di, int dj) { return (dj + 1) * 3 + (di + 1); }
};

/** @brief Assemble the complete flux balance over all cells.
 *
 * Each cell row is F_E - F_W + F_N - F_S = dx dy s with the cross-flux
 * coupling kept implicit, producing the 9-point pattern. Dirichlet data
 * moves to the right-hand side.
 */
inline SparseSystem2D assemble_2d(const Mesh2D& mesh, const InterfaceVelocityField2D& vel,
                                  std::span<const double> source, const BoundaryFn& bc,
                                  FluxVariant variant, double mu, double diffusion) {
  if (!(diffusion > 0.0)) throw config_error("assemble_2d: diffusion must be positive");
  if (static_cast<int>(source.size()) != mesh.n_cells())
    throw config_error("assemble_2d: source must have one value per cell");
  const int nx = mesh.nx, ny = mesh.ny;

  const EdgeStencils2D st = compute_edge_stencils(mesh, vel, variant, mu, diffusion);
  const TotalSourceTable ts = total_sources(mesh, vel, st, source, bc);

  SparseSystem2D sys;
  sys.nx = nx;
  sys.ny = ny;
  sys.rows.assign(mesh.n_cells(), {});
  sys.rhs.assign(mesh.n_cells(), 0.0);

  const auto add_cell = [&](int r, int ri, int rj, int cell, double v) {
    const int ci = cell % nx, cj = cell / nx;
    sys.rows[r][SparseSystem2D::slot(ci - ri, cj - rj)] += v;
  };
  const auto add_ts = [&](int r, int ri, int rj, const TotalSource& t, double w) {
    for (int k = 0; k < t.n_terms; ++k) add_cell(r, ri, rj, t.terms[k].first, w * t.terms[k].second);
    sys.rhs[r] -= w * t.constant;
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int r = mesh.cell_index(i, j);
      // east/west fluxes
      for (const auto [ie, sgn] : {std::pair{i + 1, 1.0}, std::pair{i, -1.0}}) {
        const EdgeFluxStencil& s = st.x[vel.xedge(ie, j)];
        if (ie == 0) {
          add_cell(r, i, j, mesh.cell_index(0, j), sgn * s.h_nbr);
          sys.rhs[r] -= sgn * s.h_own * bc(0.0, mesh.yc(j));
          add_ts(r, i, j, ts.x[mesh.cell_index(0, j)], sgn * s.w_nbr);
        } else if (ie == nx) {
          add_cell(r, i, j, mesh.cell_index(nx - 1, j), sgn * s.h_own);
          sys.rhs[r] -= sgn * s.h_nbr * bc(mesh.lx, mesh.yc(j));
          add_ts(r, i, j, ts.x[mesh.cell_index(nx - 1, j)], sgn * s.w_own);
        } else {
          add_cell(r, i, j, mesh.cell_index(ie - 1, j), sgn * s.h_own);
          add_cell(r, i, j, mesh.cell_index(ie, j), sgn * s.h_nbr);
          add_ts(r, i, j, ts.x[mesh.cell_index(ie - 1, j)], sgn * s.w_own);
          add_ts(r, i, j, ts.x[mesh.cell_index(ie, j)], sgn * s.w_nbr);
        }
      }
      // north/south fluxes
      for (const auto [je, sgn] : {std::pair{j + 1, 1.0}, std::pair{j, -1.0}}) {
        const EdgeFluxStencil& s = st.y[vel.yedge(i, je)];
        if (je == 0) {
          add_cell(r, i, j, mesh.cell_index(i, 0), sgn * s.h_nbr);
          sys.rhs[r] -= sgn * s.h_own * bc(mesh.xc(i), 0.0);
          add_ts(r, i, j, ts.y[mesh.cell_index(i, 0)], sgn * s.w_nbr);
        } else if (je == ny) {
          add_cell(r, i, j, mesh.cell_index(i, ny - 1), sgn * s.h_own);
          sys.rhs[r] -= sgn * s.h_nbr * bc(mesh.xc(i), mesh.ly);
          add_ts(r, i, j, ts.y[mesh.cell_index(i, ny - 1)], sgn * s.w_own);
        } else {
          add_cell(r, i, j, mesh.cell_index(i, je - 1), sgn * s.h_own);
          add_cell(r, i, j, mesh.cell_index(i, je), sgn * s.h_nbr);
          add_ts(r, i, j, ts.y[mesh.cell_index(i, je - 1)], sgn * s.w_own);
          add_ts(r, i, j, ts.y[mesh.cell_index(i, je)], sgn * s.w_nbr);
        }
      }
      sys.rhs[r] += mesh.dx * mesh.dy * source[r];
    }
  }
  return sys;
}

/// Per-cell solution values.
struct Solution2D {
  std::vector<double> c;  // nx*ny
};

/** @brief Solve the assembled 9-point system with a banded LU factorization
 * and verify the relative residual is below 1e-10.
 */
inline Solution2D solve_system_2d(const Mesh2D& mesh, const SparseSystem2D& sys) {
  const int nx = mesh.nx, ny = mesh.ny;
  const int n = nx * ny;
  const int band = nx + 1;
  detail::BandMatrix A(n, band, band);
  for (int r = 0; r < n; ++r) {
    const int ri = r % nx, rj = r / nx;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const double v = sys.rows[r][SparseSystem2D::slot(di, dj)];
        if (v == 0.0) continue;
        const int ci = ri + di, cj = rj + dj;
        if (ci < 0 || ci >= nx || cj < 0 || cj >= ny) continue;
        A.add(r, cj * nx + ci, v);
      }
  }
  std::vector<double> x = sys.rhs;
  A.solve(x);

  double rnorm = 0.0, bnorm = 0.0;
  for (int r = 0; r < n; ++r) {
    const int ri = r % nx, rj = r / nx;
    double ax = 0.0;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const int ci = ri + di, cj = rj + dj;
        if (ci < 0 || ci >= nx || cj < 0 || cj >= ny) continue;
        ax += sys.rows[r][SparseSystem2D::slot(di, dj)] * x[cj * nx + ci];
      }
    const double res = ax - sys.rhs[r];
    rnorm += res * res;
    bnorm += sys.rhs[r] * sys.rhs[r];
  }
  if (!(std::sqrt(rnorm) <= 1e-10 * std::sqrt(bnorm) + 1e-30))
    throw solver_error("solve_system_2d: residual " + std::to_string(std::sqrt(rnorm)) +
                       " exceeds tolerance");
  Solution2D out;
  out.c = std::move(x);
  return out;
}

inline Solution2D solve_transport_2d(const Mesh2D& mesh, const InterfaceVelocityField2D& vel,
                                     std::span<const double> source, const BoundaryFn& bc,
                                     FluxVariant variant, double mu, double diffusion) {
  return solve_system_2d(mesh, assemble_2d(mesh, vel, source, bc, variant, mu, diffusion));
}

/** @brief Integrated flux values of a discrete solution through every edge
 * (east-oriented for vertical, north-oriented for horizontal). Used for
 * conservation checks.
 */
struct EdgeFluxValues {
  std::vector<double> x;  // (nx+1)*ny
  std::vector<double> y;  // nx*(ny+1)
};

inline EdgeFluxValues edge_fluxes_2d(const Mesh2D& mesh, const InterfaceVelocityField2D& vel,
                                     std::span<const double> source, const BoundaryFn& bc,
                                     FluxVariant variant, double mu, double diffusion,
                                     const Solution2D& sol) {
  const int nx = mesh.nx, ny = mesh.ny;
  const EdgeStencils2D st = compute_edge_stencils(mesh, vel, variant, mu, diffusion);
  const TotalSourceTable ts = total_sources(mesh, vel, st, source, bc);
  const auto ts_val = [&](const TotalSource& t) {
    double v = t.constant;
    for (int k = 0; k < t.n_terms; ++k) v += t.terms[k].second * sol.c[t.terms[k].first];
    return v;
  };
  EdgeFluxValues out;
  out.x.resize(st.x.size());
  out.y.resize(st.y.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      const EdgeFluxStencil& s = st.x[vel.xedge(i, j)];
      double f;
      if (i == 0)
        f = s.h_own * bc(0.0, mesh.yc(j)) + s.h_nbr * sol.c[mesh.cell_index(0, j)] +
            s.w_nbr * ts_val(ts.x[mesh.cell_index(0, j)]);
      else if (i == nx)
        f = s.h_own * sol.c[mesh.cell_index(nx - 1, j)] + s.h_nbr * bc(mesh.lx, mesh.yc(j)) +
            s.w_own * ts_val(ts.x[mesh.cell_index(nx - 1, j)]);
      else
        f = s.h_own * sol.c[mesh.cell_index(i - 1, j)] + s.h_nbr * sol.c[mesh.cell_index(i, j)] +
            s.w_own * ts_val(ts.x[mesh.cell_index(i - 1, j)]) +
            s.w_nbr * ts_val(ts.x[mesh.cell_index(i, j)]);
      out.x[vel.xedge(i, j)] = f;
    }
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const EdgeFluxStencil& s = st.y[vel.yedge(i, j)];
      double f;
      if (j == 0)
        f = s.h_own * bc(mesh.xc(i), 0.0) + s.h_nbr * sol.c[mesh.cell_index(i, 0)] +
            s.w_nbr * ts_val(ts.y[mesh.cell_index(i, 0)]);
      else if (j == ny)
        f = s.h_own * sol.c[mesh.cell_index(i, ny - 1)] + s.h_nbr * bc(mesh.xc(i), mesh.ly) +
            s.w_own * ts_val(ts.y[mesh.cell_index(i, ny - 1)]);
      else
        f = s.h_own * sol.c[mesh.cell_index(i, j - 1)] + s.h_nbr * sol.c[mesh.cell_index(i, j)] +
            s.w_own * ts_val(ts.y[mesh.cell_index(i, j - 1)]) +
            s.w_nbr * ts_val(ts.y[mesh.cell_index(i, j)]);
      out.y[vel.yedge(i, j)] = f;
    }
  return out;
}

}  // namespace fluxcf
