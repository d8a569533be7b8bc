#include <doctest.h>

#include <cmath>

#include "fsidwr/element.hpp"
#include "fsidwr/geometry.hpp"
#include "fsidwr/quadrature.hpp"
#include "test_helpers.hpp"

using namespace fsidwr;

TEST_CASE("gauss rules integrate monomials exactly") {
  for (int n = 1; n <= 6; ++n) {
    const EdgeQuadrature q = gauss_edge(n);
    double wsum = 0.0;
    for (double w : q.weights) wsum += w;
    CHECK(std::abs(wsum - 1.0) < 1e-14);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double val = 0.0;
      for (int i = 0; i < q.size(); ++i) val += q.weights[i] * std::pow(q.points[i], d);
      CHECK(std::abs(val - 1.0 / (d + 1)) < 1e-13);
    }
  }
}

TEST_CASE("tensor gauss integrates 2d monomials") {
  const CellQuadrature q = gauss_cell(3);
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      double val = 0.0;
      for (int i = 0; i < q.size(); ++i)
        val += q.weights[i] * std::pow(q.points[i][0], a) * std::pow(q.points[i][1], b);
      CHECK(std::abs(val - 1.0 / ((a + 1) * (b + 1))) < 1e-13);
    }
}

TEST_CASE("lagrange elements: partition of unity and Kronecker property") {
  for (const int k : {1, 2, 4}) {
    const ScalarElement e(k);
    for (int j = 0; j < e.n_nodes(); ++j)
      for (int i = 0; i < e.n_nodes(); ++i)
        CHECK(std::abs(e.value(j, e.node(i)) - (i == j ? 1.0 : 0.0)) < 1e-12);
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::Vector2d xi(testing::uniform(0, 1), testing::uniform(0, 1));
      double sum = 0.0;
      Eigen::Vector2d gsum = Eigen::Vector2d::Zero();
      for (int j = 0; j < e.n_nodes(); ++j) {
        sum += e.value(j, xi);
        gsum += e.gradient(j, xi);
      }
      CHECK(std::abs(sum - 1.0) < 1e-13);
      CHECK(gsum.norm() < 1e-11);
    }
  }
}

TEST_CASE("element gradient matches finite differences") {
  const ScalarElement e(4);
  const double h = 1e-6;
  for (int j = 0; j < e.n_nodes(); j += 7) {
    const Eigen::Vector2d xi(0.3, 0.7);
    const Eigen::Vector2d g = e.gradient(j, xi);
    const double gx = (e.value(j, xi + Eigen::Vector2d(h, 0)) - e.value(j, xi - Eigen::Vector2d(h, 0))) / (2 * h);
    const double gy = (e.value(j, xi + Eigen::Vector2d(0, h)) - e.value(j, xi - Eigen::Vector2d(0, h))) / (2 * h);
    CHECK(std::abs(g[0] - gx) < 1e-8);
    CHECK(std::abs(g[1] - gy) < 1e-8);
  }
}

TEST_CASE("coons geometry: bilinear cells and arc edges") {
  CellGeometry g;
  g.corners = {Eigen::Vector2d(0, 0), Eigen::Vector2d(2, 0), Eigen::Vector2d(2, 1),
               Eigen::Vector2d(0, 1)};
  CHECK((g.map({0.5, 0.5}) - Eigen::Vector2d(1.0, 0.5)).norm() < 1e-15);
  CHECK(std::abs(g.jacobian({0.3, 0.8}).determinant() - 2.0) < 1e-14);

  // quarter-annulus-like cell with a circular bottom edge
  CellGeometry a;
  const Eigen::Vector2d center(0, 0);
  a.corners = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(0, 2),
               Eigen::Vector2d(2, 0)};
  a.arcs[0] = ArcSegment{center, 1.0, 0.0, M_PI / 2};
  const Eigen::Vector2d mid = a.edge_point(0, 0.5);
  CHECK(std::abs(mid.norm() - 1.0) < 1e-14);
  // boundary reproduction of the Coons map
  CHECK((a.map({0.5, 0.0}) - mid).norm() < 1e-14);

  Eigen::Vector2d xi;
  CHECK(a.invert(a.map({0.25, 0.75}), xi));
  CHECK((xi - Eigen::Vector2d(0.25, 0.75)).norm() < 1e-10);
}
