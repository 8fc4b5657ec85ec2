#pragma once

#include "fluxcf/errors.hpp"

namespace fluxcf {

/** @brief Uniform 1D partition of (0, length) into n_cells intervals.
 *
 * Nodes are x_j = j*dx for j = 0..n_cells; interfaces sit at the midpoints
 * of consecutive nodes. Interior unknowns live at nodes 1..n_cells-1.
 */
struct Mesh1D {
  int n_cells;
  double length;
  double dx;

  int n_nodes() const { return n_cells + 1; }
  int n_interfaces() const { return n_cells; }
  double node(int j) const { return j * dx; }
  /// Midpoint between nodes i and i+1, i in [0, n_cells-1].
  double interface(int i) const { return (i + 0.5) * dx; }
};

inline Mesh1D build_mesh_1d(int n_cells, double length) {
  if (n_cells < 2) throw config_error("build_mesh_1d: n_cells must be >= 2");
  if (!(length > 0.0)) throw config_error("build_mesh_1d: length must be positive");
  return Mesh1D{n_cells, length, length / n_cells};
}

/** @brief Uniform Cartesian mesh of nx*ny rectangular cells on (0,lx) x (0,ly).
 *
 * Cell centers are (xc(i), yc(j)); vertical edge lines are x = xe(i) and
 * horizontal edge lines y = ye(j). Every interior edge is shared by exactly
 * two cells.
 */
struct Mesh2D {
  int nx, ny;
  double lx, ly;
  double dx, dy;

  int n_cells() const { return nx * ny; }
  int cell_index(int i, int j) const { return j * nx + i; }
  double xc(int i) const { return (i + 0.5) * dx; }
  double yc(int j) const { return (j + 0.5) * dy; }
  double xe(int i) const { return i * dx; }
  double ye(int j) const { return j * dy; }
};

inline Mesh2D build_mesh_2d(int nx, int ny, double lx, double ly) {
  if (nx < 2 || ny < 2) throw config_error("build_mesh_2d: nx, ny must be >= 2");
  if (!(lx > 0.0) || !(ly > 0.0)) throw config_error("build_mesh_2d: lengths must be positive");
  return Mesh2D{nx, ny, lx, ly, lx / nx, ly / ny};
}

}  // namespace fluxcf
