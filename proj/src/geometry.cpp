#include "fsidwr/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace fsidwr {

Eigen::Vector2d face_reference_point(int face, double t) {
  switch (face) {
    case 0: return {t, 0.0};
    case 1: return {1.0, t};
    case 2: return {1.0 - t, 1.0};
    default: return {0.0, 1.0 - t};
  }
}

Eigen::Vector2d CellGeometry::edge_point(int face, double t) const {
  if (arcs[face]) return arcs[face]->point(t);
  const auto& [a, b] = face_corners[face];
  return (1.0 - t) * corners[a] + t * corners[b];
}

Eigen::Vector2d CellGeometry::edge_tangent(int face, double t) const {
  if (arcs[face]) return arcs[face]->tangent(t);
  const auto& [a, b] = face_corners[face];
  return corners[b] - corners[a];
}

Eigen::Vector2d CellGeometry::map(const Eigen::Vector2d& xi) const {
  const double s = xi[0], e = xi[1];
  if (!curved()) {
    return (1 - s) * (1 - e) * corners[0] + s * (1 - e) * corners[1] + s * e * corners[2] +
           (1 - s) * e * corners[3];
  }
  const Eigen::Vector2d bottom = edge_point(0, s);
  const Eigen::Vector2d top = edge_point(2, 1.0 - s);
  const Eigen::Vector2d right = edge_point(1, e);
  const Eigen::Vector2d left = edge_point(3, 1.0 - e);
  const Eigen::Vector2d bil = (1 - s) * (1 - e) * corners[0] + s * (1 - e) * corners[1] +
                              s * e * corners[2] + (1 - s) * e * corners[3];
  return (1 - e) * bottom + e * top + (1 - s) * left + s * right - bil;
}

Eigen::Matrix2d CellGeometry::jacobian(const Eigen::Vector2d& xi) const {
  const double s = xi[0], e = xi[1];
  Eigen::Matrix2d J;
  if (!curved()) {
    const Eigen::Vector2d dxds = (1 - e) * (corners[1] - corners[0]) + e * (corners[2] - corners[3]);
    const Eigen::Vector2d dxde = (1 - s) * (corners[3] - corners[0]) + s * (corners[2] - corners[1]);
    J.col(0) = dxds;
    J.col(1) = dxde;
    return J;
  }
  const Eigen::Vector2d bottom = edge_point(0, s);
  const Eigen::Vector2d top = edge_point(2, 1.0 - s);
  const Eigen::Vector2d right = edge_point(1, e);
  const Eigen::Vector2d left = edge_point(3, 1.0 - e);
  const Eigen::Vector2d dbottom = edge_tangent(0, s);
  const Eigen::Vector2d dtop = -edge_tangent(2, 1.0 - s);
  const Eigen::Vector2d dright = edge_tangent(1, e);
  const Eigen::Vector2d dleft = -edge_tangent(3, 1.0 - e);

  const Eigen::Vector2d dbil_ds =
      (1 - e) * (corners[1] - corners[0]) + e * (corners[2] - corners[3]);
  const Eigen::Vector2d dbil_de =
      (1 - s) * (corners[3] - corners[0]) + s * (corners[2] - corners[1]);

  J.col(0) = (1 - e) * dbottom + e * dtop + (right - left) - dbil_ds;
  J.col(1) = (top - bottom) + (1 - s) * dleft + s * dright - dbil_de;
  return J;
}

bool CellGeometry::invert(const Eigen::Vector2d& x, Eigen::Vector2d& xi, double tol) const {
  xi = {0.5, 0.5};
  for (int it = 0; it < 60; ++it) {
    const Eigen::Vector2d r = map(xi) - x;
    if (r.norm() < tol) return true;
    const Eigen::Matrix2d J = jacobian(xi);
    Eigen::Vector2d dx = J.partialPivLu().solve(r);
    // damp steps that would leave the vicinity of the reference square
    double alpha = 1.0;
    while (alpha > 1e-4) {
      const Eigen::Vector2d cand = xi - alpha * dx;
      if (cand.minCoeff() > -0.8 && cand.maxCoeff() < 1.8) break;
      alpha *= 0.5;
    }
    xi -= alpha * dx;
  }
  return (map(xi) - x).norm() < tol;
}

}  // namespace fsidwr
