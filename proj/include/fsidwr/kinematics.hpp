#pragma once

#include <Eigen/Core>

namespace fsidwr {

/// 2x2 cofactor matrix, cof(F) = det(F) F^{-T}; linear in F.
template <typename D>
Eigen::Matrix2d cofactor(const Eigen::MatrixBase<D>& F) {
  Eigen::Matrix2d c;
  c << F(1, 1), -F(1, 0), -F(0, 1), F(0, 0);
  return c;
}

/// 2x2 adjugate, adj(F) = det(F) F^{-1}; linear in F.
template <typename D>
Eigen::Matrix2d adjugate(const Eigen::MatrixBase<D>& F) {
  Eigen::Matrix2d a;
  a << F(1, 1), -F(0, 1), -F(1, 0), F(0, 0);
  return a;
}

/// ALE kinematics of one quadrature point, derived from the displacement
/// gradient.
struct Kinematics {
  Eigen::Matrix2d F;     ///< deformation gradient I + grad(u)
  Eigen::Matrix2d Finv;
  Eigen::Matrix2d cof;   ///< J F^{-T}
  Eigen::Matrix2d adj;   ///< J F^{-1}
  double J = 1.0;
};

inline Kinematics make_kinematics(const Eigen::Matrix2d& grad_u) {
  Kinematics k;
  k.F = Eigen::Matrix2d::Identity() + grad_u;
  k.J = k.F.determinant();
  k.cof = cofactor(k.F);
  k.adj = adjugate(k.F);
  k.Finv = k.adj / k.J;
  return k;
}

/// Green-Lagrange strain E = (F^T F - I)/2.
inline Eigen::Matrix2d green_lagrange(const Eigen::Matrix2d& F) {
  return 0.5 * (F.transpose() * F - Eigen::Matrix2d::Identity());
}

/// Second Piola-Kirchhoff stress of the St. Venant-Kirchhoff model.
inline Eigen::Matrix2d stvk_stress(const Eigen::Matrix2d& E, double mu, double lambda) {
  return 2.0 * mu * E + lambda * E.trace() * Eigen::Matrix2d::Identity();
}

}  // namespace fsidwr
