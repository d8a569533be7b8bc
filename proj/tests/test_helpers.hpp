#pragma once

#include <random>

#include "fsidwr/mesh.hpp"

namespace fsidwr::testing {

/// Structured nx x ny grid on [0,w] x [0,h]. Boundary ids: 0 left, 1 right,
/// 2 bottom/top (channel convention).
inline Mesh make_grid(int nx, int ny, double w = 1.0, double h = 1.0) {
  std::vector<Eigen::Vector2d> verts;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) verts.emplace_back(w * i / nx, h * j / ny);
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  std::vector<Cell> cells;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Cell c;
      c.verts = {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
      if (j == 0) c.boundary_id[0] = 2;
      if (i == nx - 1) c.boundary_id[1] = 1;
      if (j == ny - 1) c.boundary_id[2] = 2;
      if (i == 0) c.boundary_id[3] = 0;
      cells.push_back(c);
    }
  return Mesh(std::move(verts), std::move(cells));
}

/// Two-cell strip: left cell fluid, right cell solid. Boundary ids as in
/// make_grid.
inline Mesh make_fluid_solid_pair() {
  Mesh m = make_grid(2, 1, 2.0, 1.0);
  std::vector<Eigen::Vector2d> verts;
  for (int v = 0; v < m.n_vertices(); ++v) verts.push_back(m.vertex(v));
  std::vector<Cell> cells;
  for (const int c : m.active_cells()) cells.push_back(m.cell(c));
  cells[1].material = 1;
  return Mesh(std::move(verts), std::move(cells));
}

inline std::mt19937& rng() {
  static std::mt19937 gen(2718281);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

}  // namespace fsidwr::testing
