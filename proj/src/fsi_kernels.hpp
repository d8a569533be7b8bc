#pragma once

// Per-quadrature-point physics of the monolithic ALE system, shared by the
// residual/Jacobian assembly, the goal functional, and the error estimator.

#include <Eigen/Core>

#include "fsidwr/fe_values.hpp"
#include "fsidwr/fsi_model.hpp"
#include "fsidwr/kinematics.hpp"

namespace fsidwr::kernels {

struct QState {
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  Eigen::Matrix2d grad_v = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d grad_u = Eigen::Matrix2d::Zero();
  double p = 0.0;
  Eigen::Vector2d grad_p = Eigen::Vector2d::Zero();
};

inline void gather_local(const MixedSpace& space, int active_index, const Eigen::VectorXd& x,
                         Eigen::VectorXd& local) {
  const auto& dofs = space.cell_dofs(active_index);
  local.resize(dofs.size());
  for (size_t i = 0; i < dofs.size(); ++i) local[i] = x[dofs[i]];
}

inline QState evaluate_state_cell(const CellValues& cv, const Eigen::VectorXd& local, int q) {
  QState s;
  const int nv = cv.n_v_nodes();
  const int np = cv.n_p_nodes();
  for (int j = 0; j < nv; ++j) {
    const double phi = cv.v_value(j, q);
    const Eigen::Vector2d& g = cv.v_grad(j, q);
    for (int c = 0; c < 2; ++c) {
      s.v[c] += local[2 * j + c] * phi;
      s.u[c] += local[2 * nv + 2 * j + c] * phi;
      s.grad_v.row(c) += local[2 * j + c] * g.transpose();
      s.grad_u.row(c) += local[2 * nv + 2 * j + c] * g.transpose();
    }
  }
  for (int j = 0; j < np; ++j) {
    s.p += local[4 * nv + j] * cv.p_value(j, q);
    s.grad_p += local[4 * nv + j] * cv.p_grad(j, q);
  }
  return s;
}

inline QState evaluate_state_face(const FaceValues& fv, const Eigen::VectorXd& local, int q) {
  QState s;
  const int nv = fv.n_v_nodes();
  const int np = fv.n_p_nodes();
  for (int j = 0; j < nv; ++j) {
    const double phi = fv.v_value(j, q);
    const Eigen::Vector2d& g = fv.v_grad(j, q);
    for (int c = 0; c < 2; ++c) {
      s.v[c] += local[2 * j + c] * phi;
      s.u[c] += local[2 * nv + 2 * j + c] * phi;
      s.grad_v.row(c) += local[2 * j + c] * g.transpose();
      s.grad_u.row(c) += local[2 * nv + 2 * j + c] * g.transpose();
    }
  }
  for (int j = 0; j < np; ++j) s.p += local[4 * nv + j] * fv.p_value(j, q);
  return s;
}

/// Fluid quantities at one point: the tested integrands are
///   momentum: conv . psi + sigma_cof : grad(psi) - rho J f . psi
///   mesh    : alpha_mesh grad(u) : grad(psi_u)
///   mass    : div_ale * psi_p
struct FluidQ {
  Kinematics k;
  Eigen::Matrix2d sigma_cof;  ///< J sigma_f F^{-T}
  Eigen::Vector2d conv;       ///< rho_f J (grad v) F^{-1} v
  Eigen::Vector2d rho_J_f;
  double div_ale = 0.0;  ///< tr(adj(F) grad v) = div(J F^{-1} v)
};

inline FluidQ make_fluid_q(const FsiParameters& par, const QState& s, const Eigen::Vector2d& x) {
  FluidQ f;
  f.k = make_kinematics(s.grad_u);
  if (f.k.J <= 0.0) throw InvalidStateError();
  const double mu = par.rho_f * par.nu_f;
  const Eigen::Matrix2d vis = s.grad_v * f.k.Finv + f.k.Finv.transpose() * s.grad_v.transpose();
  f.sigma_cof = (-s.p) * f.k.cof + mu * vis * f.k.cof;
  f.conv = par.with_convection ? Eigen::Vector2d(par.rho_f * f.k.J * s.grad_v * f.k.Finv * s.v)
                               : Eigen::Vector2d::Zero();
  f.div_ale = (f.k.adj * s.grad_v).trace();
  f.rho_J_f = par.body_force_fluid ? Eigen::Vector2d(par.rho_f * f.k.J * par.body_force_fluid(x))
                                   : Eigen::Vector2d::Zero();
  return f;
}

inline double fluid_r_v(const FluidQ& f, const Eigen::Vector2d& psi, const Eigen::Matrix2d& gpsi) {
  return f.conv.dot(psi) + f.sigma_cof.cwiseProduct(gpsi).sum() - f.rho_J_f.dot(psi);
}

inline double fluid_r_u(const FsiParameters& par, const QState& s, const Eigen::Matrix2d& gpsi) {
  return par.alpha_mesh * s.grad_u.cwiseProduct(gpsi).sum();
}

inline double fluid_r_p(const FluidQ& f, double psi) { return f.div_ale * psi; }

/// Do-nothing outflow correction: -mu J F^{-T} grad(v)^T F^{-T} n, tested
/// with psi_v. At u = 0 this reduces to the Eulerian -mu (grad v)^T n.
inline Eigen::Vector2d do_nothing_traction(const FsiParameters& par, const QState& s,
                                           const Kinematics& k, const Eigen::Vector2d& n) {
  const double mu = par.rho_f * par.nu_f;
  return -mu * (k.cof * s.grad_v.transpose() * k.Finv.transpose()) * n;
}

struct SolidQ {
  Eigen::Matrix2d F, E, Sigma, FS;
  Eigen::Vector2d rho_f_s;
};

inline SolidQ make_solid_q(const FsiParameters& par, const QState& s, const Eigen::Vector2d& x) {
  SolidQ m;
  m.F = Eigen::Matrix2d::Identity() + s.grad_u;
  m.E = green_lagrange(m.F);
  m.Sigma = stvk_stress(m.E, par.mu_s, par.lambda_s);
  m.FS = m.F * m.Sigma;
  m.rho_f_s = par.body_force_solid ? Eigen::Vector2d(par.rho_s * par.body_force_solid(x))
                                   : Eigen::Vector2d::Zero();
  return m;
}

inline double solid_r_v(const SolidQ& m, const Eigen::Vector2d& psi, const Eigen::Matrix2d& gpsi) {
  return m.FS.cwiseProduct(gpsi).sum() - m.rho_f_s.dot(psi);
}

inline double solid_r_u(const QState& s, const Eigen::Vector2d& psi) { return s.v.dot(psi); }

inline double solid_r_p(const FsiParameters& par, const QState& s, double psi,
                        const Eigen::Vector2d& gpsi) {
  return par.alpha_p * (s.grad_p.dot(gpsi) + s.p * psi);
}

// ---- directional derivatives ------------------------------------------

/// Linearization of the fluid integrands in one trial direction
/// (dv, dgrad_v, du, dgrad_u, dp); fill only the relevant slots.
struct FluidTangent {
  Eigen::Vector2d dconv = Eigen::Vector2d::Zero();
  Eigen::Matrix2d dsigma_cof = Eigen::Matrix2d::Zero();
  double ddiv = 0.0;
  Eigen::Vector2d drho_J_f = Eigen::Vector2d::Zero();
};

inline FluidTangent fluid_tangent_v(const FsiParameters& par, const QState& s, const FluidQ& f,
                                    const Eigen::Vector2d& dv, const Eigen::Matrix2d& dgrad_v) {
  FluidTangent t;
  const double mu = par.rho_f * par.nu_f;
  if (par.with_convection)
    t.dconv = par.rho_f * f.k.J * (dgrad_v * f.k.Finv * s.v + s.grad_v * f.k.Finv * dv);
  t.dsigma_cof = mu * (dgrad_v * f.k.Finv + f.k.Finv.transpose() * dgrad_v.transpose()) * f.k.cof;
  t.ddiv = (f.k.adj * dgrad_v).trace();
  return t;
}

inline FluidTangent fluid_tangent_u(const FsiParameters& par, const QState& s, const FluidQ& f,
                                    const Eigen::Matrix2d& dgrad_u, const Eigen::Vector2d& x) {
  FluidTangent t;
  const double mu = par.rho_f * par.nu_f;
  const double dJ = (f.k.adj * dgrad_u).trace();
  const Eigen::Matrix2d dFinv = -f.k.Finv * dgrad_u * f.k.Finv;
  const Eigen::Matrix2d dcof = cofactor(dgrad_u);
  const Eigen::Matrix2d dadj = adjugate(dgrad_u);
  if (par.with_convection)
    t.dconv = par.rho_f * (dJ * s.grad_v * f.k.Finv * s.v + f.k.J * s.grad_v * dFinv * s.v);
  const Eigen::Matrix2d vis = s.grad_v * f.k.Finv + f.k.Finv.transpose() * s.grad_v.transpose();
  const Eigen::Matrix2d dvis = s.grad_v * dFinv + dFinv.transpose() * s.grad_v.transpose();
  t.dsigma_cof = (-s.p) * dcof + mu * (dvis * f.k.cof + vis * dcof);
  t.ddiv = (dadj * s.grad_v).trace();
  if (par.body_force_fluid) t.drho_J_f = par.rho_f * dJ * par.body_force_fluid(x);
  return t;
}

inline FluidTangent fluid_tangent_p(const FluidQ& f, double dp) {
  FluidTangent t;
  t.dsigma_cof = -dp * f.k.cof;
  return t;
}

/// d/du of F Sigma(u) in direction dgrad_u.
inline Eigen::Matrix2d solid_tangent_FS(const FsiParameters& par, const SolidQ& m,
                                        const Eigen::Matrix2d& dF) {
  const Eigen::Matrix2d dE = 0.5 * (dF.transpose() * m.F + m.F.transpose() * dF);
  const Eigen::Matrix2d dS = stvk_stress(dE, par.mu_s, par.lambda_s);
  return dF * m.Sigma + m.F * dS;
}

/// d/d(v,u) of the do-nothing traction.
inline Eigen::Vector2d do_nothing_tangent_v(const FsiParameters& par, const Kinematics& k,
                                            const Eigen::Matrix2d& dgrad_v,
                                            const Eigen::Vector2d& n) {
  const double mu = par.rho_f * par.nu_f;
  return -mu * (k.cof * dgrad_v.transpose() * k.Finv.transpose()) * n;
}

inline Eigen::Vector2d do_nothing_tangent_u(const FsiParameters& par, const QState& s,
                                            const Kinematics& k, const Eigen::Matrix2d& dgrad_u,
                                            const Eigen::Vector2d& n) {
  const double mu = par.rho_f * par.nu_f;
  const Eigen::Matrix2d dcof = cofactor(dgrad_u);
  const Eigen::Matrix2d dFinvT = (-k.Finv * dgrad_u * k.Finv).transpose();
  return -mu *
         (dcof * s.grad_v.transpose() * k.Finv.transpose() + k.cof * s.grad_v.transpose() * dFinvT) *
         n;
}

}  // namespace fsidwr::kernels
