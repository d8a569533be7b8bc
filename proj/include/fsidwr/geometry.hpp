#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>

namespace fsidwr {

/// Circular arc attached to a boundary face so refinement and integration
/// follow the true cylinder geometry instead of the chord.
struct ArcSegment {
  Eigen::Vector2d center;
  double radius = 0.0;
  double theta0 = 0.0;  ///< angle at the first face vertex
  double theta1 = 0.0;  ///< angle at the second face vertex, |theta1-theta0| < pi

  Eigen::Vector2d point(double t) const {
    const double th = theta0 + t * (theta1 - theta0);
    return center + radius * Eigen::Vector2d(std::cos(th), std::sin(th));
  }
  Eigen::Vector2d tangent(double t) const {
    const double th = theta0 + t * (theta1 - theta0);
    return radius * (theta1 - theta0) * Eigen::Vector2d(-std::sin(th), std::cos(th));
  }
};

/// Transfinite (Coons) cell geometry: a blend of the four edge curves.
/// Edges follow the counterclockwise corner order v0->v1->v2->v3; straight
/// edges reduce the map to the standard bilinear one.
class CellGeometry {
 public:
  std::array<Eigen::Vector2d, 4> corners;
  std::array<std::optional<ArcSegment>, 4> arcs;

  bool curved() const {
    return arcs[0] || arcs[1] || arcs[2] || arcs[3];
  }

  /// Edge curve f evaluated at parameter t in [0,1] (t=0 at the first corner
  /// of the face in CCW order).
  Eigen::Vector2d edge_point(int face, double t) const;
  Eigen::Vector2d edge_tangent(int face, double t) const;

  Eigen::Vector2d map(const Eigen::Vector2d& xi) const;
  Eigen::Matrix2d jacobian(const Eigen::Vector2d& xi) const;

  /// Inverts the geometry map by damped Newton; returns false if it fails
  /// to converge. On success xi holds the reference coordinates.
  bool invert(const Eigen::Vector2d& x, Eigen::Vector2d& xi, double tol = 1e-12) const;
};

/// Reference coordinates of face-f parameter t (CCW traversal).
Eigen::Vector2d face_reference_point(int face, double t);

/// Local corner indices (first, second) of face f in CCW order.
constexpr std::array<std::array<int, 2>, 4> face_corners{{{0, 1}, {1, 2}, {2, 3}, {3, 0}}};

}  // namespace fsidwr
