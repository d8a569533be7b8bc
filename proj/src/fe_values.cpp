#include "fsidwr/fe_values.hpp"

namespace fsidwr {

ShapeTable::ShapeTable(const ScalarElement& elem, const std::vector<Eigen::Vector2d>& pts) {
  const int n = elem.n_nodes();
  const int m = static_cast<int>(pts.size());
  val_.resize(n, m);
  dx_.resize(n, m);
  dy_.resize(n, m);
  for (int q = 0; q < m; ++q)
    for (int j = 0; j < n; ++j) {
      val_(j, q) = elem.value(j, pts[q]);
      const Eigen::Vector2d g = elem.gradient(j, pts[q]);
      dx_(j, q) = g[0];
      dy_(j, q) = g[1];
    }
}

CellValues::CellValues(int degree_v, int degree_p, int n_gauss)
    : quad_(gauss_cell(n_gauss)),
      elem_v_(degree_v),
      elem_p_(degree_p),
      shape_v_(elem_v_, quad_.points),
      shape_p_(elem_p_, quad_.points) {
  jxw_.resize(quad_.size());
  points_.resize(quad_.size());
  jinv_t_.resize(quad_.size());
  grad_v_.resize(quad_.size() * elem_v_.n_nodes());
  grad_p_.resize(quad_.size() * elem_p_.n_nodes());
}

void CellValues::reinit(const CellGeometry& geom) {
  for (int q = 0; q < quad_.size(); ++q) {
    const Eigen::Vector2d& xi = quad_.points[q];
    const Eigen::Matrix2d J = geom.jacobian(xi);
    const double det = J.determinant();
    jxw_[q] = det * quad_.weights[q];
    points_[q] = geom.map(xi);
    jinv_t_[q] = J.inverse().transpose();
    for (int j = 0; j < elem_v_.n_nodes(); ++j)
      grad_v_[q * elem_v_.n_nodes() + j] = jinv_t_[q] * shape_v_.ref_grad(j, q);
    for (int j = 0; j < elem_p_.n_nodes(); ++j)
      grad_p_[q * elem_p_.n_nodes() + j] = jinv_t_[q] * shape_p_.ref_grad(j, q);
  }
}

FaceValues::FaceValues(int degree_v, int degree_p, int n_gauss)
    : quad_(gauss_edge(n_gauss)), elem_v_(degree_v), elem_p_(degree_p) {
  const int m = n_q();
  jxw_.resize(m);
  points_.resize(m);
  normals_.resize(m);
  val_v_.resize(elem_v_.n_nodes(), m);
  val_p_.resize(elem_p_.n_nodes(), m);
  grad_v_.resize(m * elem_v_.n_nodes());
}

void FaceValues::reinit(const CellGeometry& geom, int face) {
  for (int q = 0; q < n_q(); ++q) {
    const double t = quad_.points[q];
    const Eigen::Vector2d xi = face_reference_point(face, t);
    const Eigen::Vector2d tang = geom.edge_tangent(face, t);
    const double len = tang.norm();
    jxw_[q] = len * quad_.weights[q];
    points_[q] = geom.edge_point(face, t);
    // CCW traversal: outward normal is the tangent rotated by -90 degrees.
    normals_[q] = Eigen::Vector2d(tang[1], -tang[0]) / len;
    const Eigen::Matrix2d jinv_t = geom.jacobian(xi).inverse().transpose();
    for (int j = 0; j < elem_v_.n_nodes(); ++j) {
      val_v_(j, q) = elem_v_.value(j, xi);
      grad_v_[q * elem_v_.n_nodes() + j] = jinv_t * elem_v_.gradient(j, xi);
    }
    for (int j = 0; j < elem_p_.n_nodes(); ++j) val_p_(j, q) = elem_p_.value(j, xi);
  }
}

}  // namespace fsidwr
