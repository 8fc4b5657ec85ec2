#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "fluxcf/errors.hpp"
#include "fluxcf/mesh.hpp"
#include "fluxcf/poisson.hpp"

namespace fluxcf {

/// How the advection-diffusion source is generated from the manufactured
/// solution: with the discrete velocity reconstructed from the potential, or
/// with a closed-form velocity.
enum class SourcePolicy { DiscreteVelocity, Analytic };

/** @brief A manufactured-solution problem: exact solution, Poisson source,
 * boundary data, and parameters. All callables take (x, y); 1D cases ignore y.
 */
struct CaseDefinition {
  int id = 0;
  int dimension = 1;
  double diffusion = 1.0;
  double mu = 1.0;
  double amp = 0.0;  // case 2 source amplitude A
  SourcePolicy source_policy = SourcePolicy::DiscreteVelocity;

  std::function<double(double, double)> exact;
  std::function<double(double, double)> exact_dx;
  std::function<double(double, double)> exact_dy;   // zero for 1D cases
  std::function<double(double, double)> exact_lap;  // c'' in 1D
  std::function<double(double, double)> poisson_source;
  std::function<double(double, double)> potential_bc;
  std::function<double(double, double)> solution_bc;
  // closed-form velocity where one exists (cases 1 and 3)
  std::function<double(double, double)> velocity_x;
  std::function<double(double, double)> velocity_y;
};

/** @brief Test case 1: V = 1 - 0.95 sin(pi x), boundary layer at x = 1 of
 * width D in the exact solution.
 */
inline CaseDefinition case1(double diffusion) {
  if (!(diffusion > 0.0)) throw config_error("case1: diffusion must be positive");
  using std::numbers::pi;
  const double D = diffusion;
  const double E = std::exp(-1.0 / D);
  CaseDefinition c;
  c.id = 1;
  c.dimension = 1;
  c.diffusion = D;
  c.exact = [=](double x, double) {
    return 0.2 * std::sin(pi * x) + (std::exp((x - 1.0) / D) - E) / (1.0 - E);
  };
  c.exact_dx = [=](double x, double) {
    return 0.2 * pi * std::cos(pi * x) + std::exp((x - 1.0) / D) / (D * (1.0 - E));
  };
  c.exact_dy = [](double, double) { return 0.0; };
  c.exact_lap = [=](double x, double) {
    return -0.2 * pi * pi * std::sin(pi * x) + std::exp((x - 1.0) / D) / (D * D * (1.0 - E));
  };
  c.poisson_source = [=](double x, double) { return -0.95 * pi * std::cos(pi * x); };
  // phi is the antiderivative of -V
  c.potential_bc = [=](double x, double) { return -x - (0.95 / pi) * std::cos(pi * x); };
  c.solution_bc = [fn = c.exact](double x, double y) { return fn(x, y); };
  c.velocity_x = [=](double x, double) { return 1.0 - 0.95 * std::sin(pi * x); };
  return c;
}

/** @brief Test case 2: steep Poisson source of amplitude A near both ends,
 * potential drop -300 -> 0, velocity known only discretely.
 */
inline CaseDefinition case2(double amp, double diffusion) {
  if (!(diffusion > 0.0)) throw config_error("case2: diffusion must be positive");
  using std::numbers::pi;
  CaseDefinition c;
  c.id = 2;
  c.dimension = 1;
  c.diffusion = diffusion;
  c.amp = amp;
  c.exact = [=](double x, double) { return std::sin(pi * x); };
  c.exact_dx = [=](double x, double) { return pi * std::cos(pi * x); };
  c.exact_dy = [](double, double) { return 0.0; };
  c.exact_lap = [=](double x, double) { return -pi * pi * std::sin(pi * x); };
  c.poisson_source = [=](double x, double) {
    return -amp * (std::exp(-1000.0 * x * x) - std::exp(-1000.0 * (1.0 - x) * (1.0 - x)));
  };
  c.potential_bc = [](double x, double) { return x == 0.0 ? -300.0 : 0.0; };
  c.solution_bc = [fn = c.exact](double x, double y) { return fn(x, y); };
  return c;
}

/** @brief Test case 3 (2D): flow from the upper right towards the lower left,
 * c* = sin(pi x) sin(pi y).
 */
inline CaseDefinition case3(double diffusion) {
  if (!(diffusion > 0.0)) throw config_error("case3: diffusion must be positive");
  using std::numbers::pi;
  CaseDefinition c;
  c.id = 3;
  c.dimension = 2;
  c.diffusion = diffusion;
  c.exact = [=](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  c.exact_dx = [=](double x, double y) { return pi * std::cos(pi * x) * std::sin(pi * y); };
  c.exact_dy = [=](double x, double y) { return pi * std::sin(pi * x) * std::cos(pi * y); };
  c.exact_lap = [=](double x, double y) {
    return -2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y);
  };
  c.potential_bc = [=](double x, double y) {
    return std::sin(pi * x) * std::sin(pi * y) + std::sin(2 * pi * x) * std::sin(2 * pi * y) +
           9.0 * x + 9.0 * y;
  };
  c.poisson_source = [=](double x, double y) {
    return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y) +
           8.0 * pi * pi * std::sin(2 * pi * x) * std::sin(2 * pi * y);
  };
  c.solution_bc = [fn = c.exact](double x, double y) { return fn(x, y); };
  c.velocity_x = [=](double x, double y) {
    return -(pi * std::cos(pi * x) * std::sin(pi * y) +
             2 * pi * std::cos(2 * pi * x) * std::sin(2 * pi * y) + 9.0);
  };
  c.velocity_y = [=](double x, double y) {
    return -(pi * std::sin(pi * x) * std::cos(pi * y) +
             2 * pi * std::sin(2 * pi * x) * std::cos(2 * pi * y) + 9.0);
  };
  return c;
}

/** @brief Nodal advection-diffusion source for a 1D case.
 *
 * s_j = mu (c*'(x_j) V_j + c*(x_j) s_P(x_j)) - D c*''(x_j), where V_j is the
 * nodal velocity reconstructed from the discrete potential (V' = s_P by the
 * Poisson equation). With SourcePolicy::Analytic the closed-form velocity is
 * used instead.
 */
inline std::vector<double> transport_source_1d(const CaseDefinition& def, const Mesh1D& mesh,
                                               const PotentialField1D& potential) {
  if (def.dimension != 1) throw config_error("transport_source_1d: 2D case");
  std::vector<double> v;
  if (def.source_policy == SourcePolicy::DiscreteVelocity) {
    v = nodal_velocity_1d(mesh, potential);
  } else {
    if (!def.velocity_x) throw config_error("transport_source_1d: no analytic velocity");
    v.resize(mesh.n_nodes());
    for (int j = 0; j < mesh.n_nodes(); ++j) v[j] = def.velocity_x(mesh.node(j), 0.0);
  }
  std::vector<double> s(mesh.n_nodes());
  for (int j = 0; j < mesh.n_nodes(); ++j) {
    const double x = mesh.node(j);
    s[j] = def.mu * (def.exact_dx(x, 0.0) * v[j] + def.exact(x, 0.0) * def.poisson_source(x, 0.0)) -
           def.diffusion * def.exact_lap(x, 0.0);
  }
  return s;
}

/** @brief Cell-center advection-diffusion source for a 2D case.
 *
 * The discrete cell velocity is the average of the two adjacent edge
 * velocities in each direction; div V equals the Poisson source.
 */
inline std::vector<double> transport_source_2d(const CaseDefinition& def, const Mesh2D& mesh,
                                               const InterfaceVelocityField2D& vel) {
  if (def.dimension != 2) throw config_error("transport_source_2d: 1D case");
  std::vector<double> s(mesh.n_cells());
  for (int j = 0; j < mesh.ny; ++j) {
    for (int i = 0; i < mesh.nx; ++i) {
      const double x = mesh.xc(i), y = mesh.yc(j);
      double v1, v2;
      if (def.source_policy == SourcePolicy::DiscreteVelocity) {
        v1 = 0.5 * (vel.vx[vel.xedge(i, j)] + vel.vx[vel.xedge(i + 1, j)]);
        v2 = 0.5 * (vel.vy[vel.yedge(i, j)] + vel.vy[vel.yedge(i, j + 1)]);
      } else {
        v1 = def.velocity_x(x, y);
        v2 = def.velocity_y(x, y);
      }
      s[mesh.cell_index(i, j)] =
          def.mu * (def.exact_dx(x, y) * v1 + def.exact_dy(x, y) * v2 +
                    def.exact(x, y) * def.poisson_source(x, y)) -
          def.diffusion * def.exact_lap(x, y);
    }
  }
  return s;
}

}  // namespace fluxcf
