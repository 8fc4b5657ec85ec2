#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fluxcf/cases.hpp"
#include "fluxcf/errors.hpp"
#include "fluxcf/mesh.hpp"
#include "fluxcf/poisson.hpp"
#include "fluxcf/solver1d.hpp"
#include "fluxcf/transport2d.hpp"

namespace fluxcf {

/** @brief Discrete relative L2 error over the interior control volumes:
 * sqrt(sum w (c* - c)^2) / sqrt(sum w c*^2) with w the control-volume measure
 * and c* sampled at the nodes.
 */
inline double l2_relative_error(const Mesh1D& mesh, const DiscreteSolution1D& sol,
                                const std::function<double(double)>& exact) {
  double num = 0.0, den = 0.0;
  for (int j = 1; j < mesh.n_nodes() - 1; ++j) {
    const double e = exact(mesh.node(j));
    const double d = e - sol.c[j];
    num += mesh.dx * d * d;
    den += mesh.dx * e * e;
  }
  if (den == 0.0) throw config_error("l2_relative_error: exact solution has zero norm");
  return std::sqrt(num / den);
}

/// 2D counterpart over all cell centers.
inline double l2_relative_error(const Mesh2D& mesh, const Solution2D& sol,
                                const std::function<double(double, double)>& exact) {
  double num = 0.0, den = 0.0;
  const double w = mesh.dx * mesh.dy;
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i) {
      const double e = exact(mesh.xc(i), mesh.yc(j));
      const double d = e - sol.c[mesh.cell_index(i, j)];
      num += w * d * d;
      den += w * e * e;
    }
  if (den == 0.0) throw config_error("l2_relative_error: exact solution has zero norm");
  return std::sqrt(num / den);
}

/// One solved mesh level: coordinates, numeric and exact values, L2 error.
struct LevelResult {
  int n = 0;
  double l2_error = 0.0;
  std::vector<double> x, y;  // y empty for 1D
  std::vector<double> numeric, exact;
};

/** @brief Run the full pipeline for one case at one resolution: Poisson solve,
 * velocity reconstruction, source construction, transport solve, error.
 * For 2D cases n means an n x n mesh.
 */
inline LevelResult solve_case(const CaseDefinition& def, int n, FluxVariant variant) {
  LevelResult out;
  out.n = n;
  if (def.dimension == 1) {
    const Mesh1D mesh = build_mesh_1d(n, 1.0);
    std::vector<double> sp(mesh.n_nodes());
    for (int j = 0; j < mesh.n_nodes(); ++j) sp[j] = def.poisson_source(mesh.node(j), 0.0);
    const PotentialField1D phi = solve_poisson_1d(
        mesh, sp, {def.potential_bc(0.0, 0.0), def.potential_bc(mesh.length, 0.0)});
    const InterfaceVelocityField1D vel = reconstruct_velocity_1d(mesh, phi, sp);
    const std::vector<double> s = transport_source_1d(def, mesh, phi);
    const DiscreteSolution1D sol =
        solve_transport_1d(mesh, vel, s, {def.solution_bc(0.0, 0.0), def.solution_bc(1.0, 0.0)},
                           variant, def.mu, def.diffusion);
    out.l2_error = l2_relative_error(mesh, sol, [&](double x) { return def.exact(x, 0.0); });
    out.x.resize(mesh.n_nodes());
    out.numeric = sol.c;
    out.exact.resize(mesh.n_nodes());
    for (int j = 0; j < mesh.n_nodes(); ++j) {
      out.x[j] = mesh.node(j);
      out.exact[j] = def.exact(out.x[j], 0.0);
    }
    return out;
  }
  const Mesh2D mesh = build_mesh_2d(n, n, 1.0, 1.0);
  std::vector<double> sp(mesh.n_cells());
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i)
      sp[mesh.cell_index(i, j)] = def.poisson_source(mesh.xc(i), mesh.yc(j));
  const PotentialField2D phi = solve_poisson_2d(mesh, sp, def.potential_bc);
  const InterfaceVelocityField2D vel = reconstruct_velocity_2d(mesh, phi);
  const std::vector<double> s = transport_source_2d(def, mesh, vel);
  const Solution2D sol =
      solve_transport_2d(mesh, vel, s, def.solution_bc, variant, def.mu, def.diffusion);
  out.l2_error = l2_relative_error(mesh, sol, def.exact);
  out.x.resize(mesh.n_cells());
  out.y.resize(mesh.n_cells());
  out.numeric = sol.c;
  out.exact.resize(mesh.n_cells());
  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i) {
      const int c = mesh.cell_index(i, j);
      out.x[c] = mesh.xc(i);
      out.y[c] = mesh.yc(j);
      out.exact[c] = def.exact(out.x[c], out.y[c]);
    }
  return out;
}

/// Per-level errors and observed orders of a refinement study.
struct ConvergenceRow {
  int n;
  double l2_error;
  std::optional<double> order;
};

struct ConvergenceReport {
  int case_id = 0;
  FluxVariant variant = FluxVariant::AutoUpwind;
  double diffusion = 1.0;
  double mu = 1.0;
  double amp = 0.0;
  std::vector<ConvergenceRow> rows;
};

/** @brief End-to-end refinement study. Levels must strictly double; the order
 * entry of row i is log2(E_{i-1}/E_i).
 */
inline ConvergenceReport run_convergence(const CaseDefinition& def, FluxVariant variant,
                                         std::span<const int> levels) {
  if (levels.empty()) throw config_error("run_convergence: no levels");
  for (size_t i = 1; i < levels.size(); ++i)
    if (levels[i] != 2 * levels[i - 1])
      throw config_error("run_convergence: levels must double");
  ConvergenceReport rep;
  rep.case_id = def.id;
  rep.variant = variant;
  rep.diffusion = def.diffusion;
  rep.mu = def.mu;
  rep.amp = def.amp;
  double prev = 0.0;
  for (size_t i = 0; i < levels.size(); ++i) {
    LevelResult lr;
    try {
      lr = solve_case(def, levels[i], variant);
    } catch (const std::exception& e) {
      throw solver_error("level N=" + std::to_string(levels[i]) + ": " + e.what());
    }
    ConvergenceRow row{levels[i], lr.l2_error, std::nullopt};
    if (i > 0) row.order = std::log2(prev / lr.l2_error);
    rep.rows.push_back(row);
    prev = lr.l2_error;
  }
  return rep;
}

/// Write `N,l2_error,order` rows; the first order field is empty.
inline void emit_csv(const ConvergenceReport& rep, std::ostream& os) {
  os << "N,l2_error,order\n";
  char buf[64];
  for (const auto& row : rep.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.6e,", row.n, row.l2_error);
    os << buf;
    if (row.order) {
      std::snprintf(buf, sizeof buf, "%.4f", *row.order);
      os << buf;
    }
    os << "\n";
  }
}

inline void emit_csv(const ConvergenceReport& rep, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw config_error("emit_csv: cannot open " + path);
  emit_csv(rep, os);
  if (!os.good()) throw solver_error("emit_csv: write failed for " + path);
}

/// Solution dump: `x[,y],c_numeric,c_exact` at nodes (1D) or cell centers (2D).
inline void dump_solution(const LevelResult& lr, std::ostream& os) {
  char buf[128];
  const bool two_d = !lr.y.empty();
  os << (two_d ? "x,y,c_numeric,c_exact\n" : "x,c_numeric,c_exact\n");
  for (size_t k = 0; k < lr.numeric.size(); ++k) {
    if (two_d)
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10e,%.10e\n", lr.x[k], lr.y[k], lr.numeric[k],
                    lr.exact[k]);
    else
      std::snprintf(buf, sizeof buf, "%.10g,%.10e,%.10e\n", lr.x[k], lr.numeric[k], lr.exact[k]);
    os << buf;
  }
}

inline void dump_solution(const LevelResult& lr, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw config_error("dump_solution: cannot open " + path);
  dump_solution(lr, os);
  if (!os.good()) throw solver_error("dump_solution: write failed for " + path);
}

}  // namespace fluxcf
