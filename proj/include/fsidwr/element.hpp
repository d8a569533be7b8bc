#pragma once

#include <Eigen/Core>
#include <vector>

namespace fsidwr {

/// Tensor-product Lagrange element Q_k on the reference square [0,1]^2,
/// with equispaced nodal support points. Local node ordering is
/// lexicographic: node (ix, iy) -> iy*(k+1) + ix.
class ScalarElement {
 public:
  explicit ScalarElement(int degree);

  int degree() const { return degree_; }
  int n_nodes() const { return n_; }

  /// Reference coordinates of node j.
  Eigen::Vector2d node(int j) const;

  double value(int j, const Eigen::Vector2d& xi) const;
  Eigen::Vector2d gradient(int j, const Eigen::Vector2d& xi) const;

  /// 1D Lagrange basis on equispaced nodes {0, 1/k, ..., 1}.
  double value_1d(int i, double x) const;
  double derivative_1d(int i, double x) const;

 private:
  int degree_;
  int n_;
};

}  // namespace fsidwr
