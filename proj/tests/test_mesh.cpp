#include <catch2/catch_amalgamated.hpp>

#include "fluxcf/mesh.hpp"

using namespace fluxcf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("build_mesh_1d") {
  const Mesh1D m = build_mesh_1d(4, 1.0);
  CHECK(m.dx == 0.25);
  CHECK(m.n_nodes() == 5);
  CHECK(m.node(0) == 0.0);
  CHECK(m.node(4) == 1.0);
  CHECK_THAT(m.node(2), WithinAbs(0.5, 1e-15));
  CHECK_THAT(build_mesh_1d(40, 1.0).dx, WithinRel(0.025, 1e-15));
  CHECK_THROWS_AS(build_mesh_1d(1, 1.0), config_error);
  CHECK_THROWS_AS(build_mesh_1d(4, 0.0), config_error);
  CHECK_THAT(m.dx * m.n_cells, WithinRel(m.length, 1e-14));
}

TEST_CASE("1D interfaces are node midpoints") {
  const Mesh1D m = build_mesh_1d(7, 2.0);
  for (int i = 0; i < m.n_interfaces(); ++i)
    CHECK_THAT(m.interface(i), WithinRel(0.5 * (m.node(i) + m.node(i + 1)), 1e-14));
  for (int j = 0; j < m.n_cells; ++j) CHECK(m.node(j) < m.node(j + 1));
}

TEST_CASE("build_mesh_2d") {
  const Mesh2D m = build_mesh_2d(16, 16, 1.0, 1.0);
  CHECK(m.n_cells() == 256);
  CHECK(m.dx == m.dy);
  CHECK_THAT(m.dx, WithinRel(1.0 / 16.0, 1e-15));

  const Mesh2D s = build_mesh_2d(2, 2, 1.0, 1.0);
  CHECK(s.n_cells() == 4);
  CHECK_THAT(s.xc(0), WithinAbs(0.25, 1e-15));
  CHECK_THAT(s.yc(1), WithinAbs(0.75, 1e-15));

  CHECK_THROWS_AS(build_mesh_2d(0, 4, 1.0, 1.0), config_error);
  CHECK_THROWS_AS(build_mesh_2d(4, 4, -1.0, 1.0), config_error);
}

TEST_CASE("2D edge midpoints lie on cell-center gridlines") {
  const Mesh2D m = build_mesh_2d(5, 3, 1.0, 0.6);
  for (int i = 0; i <= m.nx; ++i) CHECK_THAT(m.xe(i), WithinAbs(i * m.dx, 1e-15));
  // the vertical edge at xe(i) between cells (i-1,j),(i,j) has midpoint y = yc(j)
  for (int i = 1; i < m.nx; ++i)
    CHECK_THAT(m.xe(i), WithinAbs(0.5 * (m.xc(i - 1) + m.xc(i)), 1e-15));
  for (int j = 1; j < m.ny; ++j)
    CHECK_THAT(m.ye(j), WithinAbs(0.5 * (m.yc(j - 1) + m.yc(j)), 1e-15));
}
