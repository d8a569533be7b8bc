#pragma once

#include <Eigen/Core>
#include <vector>

#include "fsidwr/element.hpp"
#include "fsidwr/geometry.hpp"
#include "fsidwr/quadrature.hpp"

namespace fsidwr {

/// Reference-element shape values and gradients tabulated at a fixed point
/// set.
class ShapeTable {
 public:
  ShapeTable(const ScalarElement& elem, const std::vector<Eigen::Vector2d>& points);

  int n_nodes() const { return static_cast<int>(val_.rows()); }
  double value(int j, int q) const { return val_(j, q); }
  Eigen::Vector2d ref_grad(int j, int q) const { return {dx_(j, q), dy_(j, q)}; }

 private:
  Eigen::MatrixXd val_, dx_, dy_;
};

/// Per-cell quadrature data for the mixed (velocity-degree, pressure-degree)
/// pair: physical points, Jacobian weights, and physical shape gradients.
class CellValues {
 public:
  CellValues(int degree_v, int degree_p, int n_gauss);

  void reinit(const CellGeometry& geom);

  int n_q() const { return quad_.size(); }
  double JxW(int q) const { return jxw_[q]; }
  const Eigen::Vector2d& point(int q) const { return points_[q]; }
  const Eigen::Matrix2d& jacobian_inv_t(int q) const { return jinv_t_[q]; }

  int n_v_nodes() const { return shape_v_.n_nodes(); }
  int n_p_nodes() const { return shape_p_.n_nodes(); }
  double v_value(int j, int q) const { return shape_v_.value(j, q); }
  double p_value(int j, int q) const { return shape_p_.value(j, q); }
  const Eigen::Vector2d& v_grad(int j, int q) const { return grad_v_[q * n_v_nodes() + j]; }
  const Eigen::Vector2d& p_grad(int j, int q) const { return grad_p_[q * n_p_nodes() + j]; }

 private:
  CellQuadrature quad_;
  ScalarElement elem_v_, elem_p_;
  ShapeTable shape_v_, shape_p_;
  std::vector<double> jxw_;
  std::vector<Eigen::Vector2d> points_;
  std::vector<Eigen::Matrix2d> jinv_t_;
  std::vector<Eigen::Vector2d> grad_v_, grad_p_;
};

/// Face counterpart: quadrature along one cell face with outward normals and
/// full physical shape gradients at the face points.
class FaceValues {
 public:
  FaceValues(int degree_v, int degree_p, int n_gauss);

  void reinit(const CellGeometry& geom, int face);

  int n_q() const { return static_cast<int>(quad_.points.size()); }
  double JxW(int q) const { return jxw_[q]; }
  const Eigen::Vector2d& normal(int q) const { return normals_[q]; }
  const Eigen::Vector2d& point(int q) const { return points_[q]; }

  int n_v_nodes() const { return elem_v_.n_nodes(); }
  int n_p_nodes() const { return elem_p_.n_nodes(); }
  double v_value(int j, int q) const { return val_v_(j, q); }
  double p_value(int j, int q) const { return val_p_(j, q); }
  const Eigen::Vector2d& v_grad(int j, int q) const { return grad_v_[q * elem_v_.n_nodes() + j]; }

 private:
  EdgeQuadrature quad_;
  ScalarElement elem_v_, elem_p_;
  std::vector<double> jxw_;
  std::vector<Eigen::Vector2d> points_, normals_;
  Eigen::MatrixXd val_v_, val_p_;
  std::vector<Eigen::Vector2d> grad_v_;
};

}  // namespace fsidwr
