#pragma once

#include <Eigen/Core>
#include <vector>

namespace fsidwr {

/// Gauss-Legendre quadrature on the reference interval [0,1].
struct EdgeQuadrature {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Tensor-product Gauss quadrature on the reference square [0,1]^2.
struct CellQuadrature {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// n-point Gauss rule, exact for polynomials of degree 2n-1.
EdgeQuadrature gauss_edge(int n_points);

/// n x n tensor Gauss rule on the square.
CellQuadrature gauss_cell(int n_points);

}  // namespace fsidwr
