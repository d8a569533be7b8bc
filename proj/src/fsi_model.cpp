#include "fsidwr/fsi_model.hpp"

#include "fsi_kernels.hpp"

namespace fsidwr {

using kernels::FluidQ;
using kernels::FluidTangent;
using kernels::QState;
using kernels::SolidQ;

namespace {

struct Workspace {
  CellValues cv_disc;
  CellValues cv_state;
  FaceValues fv_disc;
  FaceValues fv_state;
  bool same_space;

  Workspace(const MixedSpace& space, const MixedSpace& state_space)
      : cv_disc(space.degree_v(), space.degree_p(), space.degree_v() + 1),
        cv_state(state_space.degree_v(), state_space.degree_p(), space.degree_v() + 1),
        fv_disc(space.degree_v(), space.degree_p(), space.degree_v() + 1),
        fv_state(state_space.degree_v(), state_space.degree_p(), space.degree_v() + 1),
        same_space(&space == &state_space) {}
};

}  // namespace

Eigen::VectorXd assemble_residual(const MixedSpace& space, const FsiParameters& par,
                                  const FlowBcs& bcs, const MixedSpace& state_space,
                                  const Eigen::VectorXd& state) {
  par.check();
  const Mesh& mesh = space.mesh();
  Workspace ws(space, state_space);
  CellValues& cv_state = ws.same_space ? ws.cv_disc : ws.cv_state;
  FaceValues& fv_state = ws.same_space ? ws.fv_disc : ws.fv_state;

  Eigen::VectorXd r = Eigen::VectorXd::Zero(space.n_dofs());
  Eigen::VectorXd xs, rl;

  const int nv = ws.cv_disc.n_v_nodes();
  const int np = ws.cv_disc.n_p_nodes();

  for (int ac = 0; ac < mesh.n_active_cells(); ++ac) {
    const int c = mesh.active_cells()[ac];
    const Cell& cell = mesh.cell(c);
    const CellGeometry geom = mesh.cell_geometry(c);
    ws.cv_disc.reinit(geom);
    if (!ws.same_space) ws.cv_state.reinit(geom);
    kernels::gather_local(state_space, ac, state, xs);
    rl = Eigen::VectorXd::Zero(4 * nv + np);

    const auto& vscalars = space.velocity_layout().cell_dofs[ac];

    for (int q = 0; q < ws.cv_disc.n_q(); ++q) {
      const QState s = kernels::evaluate_state_cell(cv_state, xs, q);
      const double w = ws.cv_disc.JxW(q);

      if (cell.material == 0) {
        const FluidQ f = kernels::make_fluid_q(par, s, ws.cv_disc.point(q));
        for (int j = 0; j < nv; ++j) {
          const double phi = ws.cv_disc.v_value(j, q);
          const Eigen::Vector2d& g = ws.cv_disc.v_grad(j, q);
          for (int comp = 0; comp < 2; ++comp) {
            rl[2 * j + comp] +=
                w * (f.conv[comp] * phi + f.sigma_cof.row(comp).dot(g) - f.rho_J_f[comp] * phi);
          }
          if (!space.u_node_on_interface(vscalars[j])) {
            for (int comp = 0; comp < 2; ++comp)
              rl[2 * nv + 2 * j + comp] += w * par.alpha_mesh * s.grad_u.row(comp).dot(g);
          }
        }
        for (int j = 0; j < np; ++j) rl[4 * nv + j] += w * f.div_ale * ws.cv_disc.p_value(j, q);
      } else {
        const SolidQ m = kernels::make_solid_q(par, s, ws.cv_disc.point(q));
        for (int j = 0; j < nv; ++j) {
          const double phi = ws.cv_disc.v_value(j, q);
          const Eigen::Vector2d& g = ws.cv_disc.v_grad(j, q);
          for (int comp = 0; comp < 2; ++comp) {
            rl[2 * j + comp] += w * (m.FS.row(comp).dot(g) - m.rho_f_s[comp] * phi);
            rl[2 * nv + 2 * j + comp] += w * s.v[comp] * phi;
          }
        }
        for (int j = 0; j < np; ++j) {
          const double psi = ws.cv_disc.p_value(j, q);
          const Eigen::Vector2d& gp = ws.cv_disc.p_grad(j, q);
          rl[4 * nv + j] += w * par.alpha_p * (s.grad_p.dot(gp) + s.p * psi);
        }
      }
    }

    if (cell.material == 0 && bcs.outflow_id >= 0) {
      for (int face = 0; face < 4; ++face) {
        if (cell.boundary_id[face] != bcs.outflow_id) continue;
        ws.fv_disc.reinit(geom, face);
        if (!ws.same_space) ws.fv_state.reinit(geom, face);
        for (int q = 0; q < ws.fv_disc.n_q(); ++q) {
          const QState s = kernels::evaluate_state_face(fv_state, xs, q);
          const Kinematics k = make_kinematics(s.grad_u);
          if (k.J <= 0.0) throw InvalidStateError();
          const Eigen::Vector2d T =
              kernels::do_nothing_traction(par, s, k, ws.fv_disc.normal(q));
          const double w = ws.fv_disc.JxW(q);
          for (int j = 0; j < nv; ++j) {
            const double phi = ws.fv_disc.v_value(j, q);
            for (int comp = 0; comp < 2; ++comp) rl[2 * j + comp] += w * T[comp] * phi;
          }
        }
      }
    }

    const auto& dofs = space.cell_dofs(ac);
    for (size_t i = 0; i < dofs.size(); ++i) r[dofs[i]] += rl[i];
  }
  return r;
}

void assemble_jacobian(const MixedSpace& space, const FsiParameters& par, const FlowBcs& bcs,
                       const MixedSpace& state_space, const Eigen::VectorXd& state,
                       SparseMatrix& A, const ConstraintSet* constraints) {
  par.check();
  const Mesh& mesh = space.mesh();
  Workspace ws(space, state_space);
  CellValues& cv_state = ws.same_space ? ws.cv_disc : ws.cv_state;
  FaceValues& fv_state = ws.same_space ? ws.fv_disc : ws.fv_state;

  const int nv = ws.cv_disc.n_v_nodes();
  const int np = ws.cv_disc.n_p_nodes();
  const int n_loc = 4 * nv + np;

  Eigen::VectorXd xs;
  Eigen::MatrixXd M(n_loc, n_loc);

  for (int ac = 0; ac < mesh.n_active_cells(); ++ac) {
    const int c = mesh.active_cells()[ac];
    const Cell& cell = mesh.cell(c);
    const CellGeometry geom = mesh.cell_geometry(c);
    ws.cv_disc.reinit(geom);
    if (!ws.same_space) ws.cv_state.reinit(geom);
    kernels::gather_local(state_space, ac, state, xs);
    M.setZero();

    const auto& vscalars = space.velocity_layout().cell_dofs[ac];
    const CellValues& cv = ws.cv_disc;

    for (int q = 0; q < cv.n_q(); ++q) {
      const QState s = kernels::evaluate_state_cell(cv_state, xs, q);
      const double w = cv.JxW(q);

      if (cell.material == 0) {
        const FluidQ f = kernels::make_fluid_q(par, s, cv.point(q));

        for (int jt = 0; jt < nv; ++jt) {
          const double phi_j = cv.v_value(jt, q);
          const Eigen::Vector2d& g_j = cv.v_grad(jt, q);
          for (int cj = 0; cj < 2; ++cj) {
            // velocity trial
            {
              Eigen::Matrix2d dgv = Eigen::Matrix2d::Zero();
              dgv.row(cj) = g_j.transpose();
              Eigen::Vector2d dv = Eigen::Vector2d::Zero();
              dv[cj] = phi_j;
              const FluidTangent t = kernels::fluid_tangent_v(par, s, f, dv, dgv);
              const int col = 2 * jt + cj;
              for (int it = 0; it < nv; ++it) {
                const double phi_i = cv.v_value(it, q);
                const Eigen::Vector2d& g_i = cv.v_grad(it, q);
                for (int ci = 0; ci < 2; ++ci)
                  M(2 * it + ci, col) +=
                      w * (t.dconv[ci] * phi_i + t.dsigma_cof.row(ci).dot(g_i));
              }
              for (int it = 0; it < np; ++it)
                M(4 * nv + it, col) += w * t.ddiv * cv.p_value(it, q);
            }
            // displacement trial
            {
              Eigen::Matrix2d dgu = Eigen::Matrix2d::Zero();
              dgu.row(cj) = g_j.transpose();
              const FluidTangent t = kernels::fluid_tangent_u(par, s, f, dgu, cv.point(q));
              const int col = 2 * nv + 2 * jt + cj;
              for (int it = 0; it < nv; ++it) {
                const double phi_i = cv.v_value(it, q);
                const Eigen::Vector2d& g_i = cv.v_grad(it, q);
                for (int ci = 0; ci < 2; ++ci)
                  M(2 * it + ci, col) += w * (t.dconv[ci] * phi_i +
                                              t.dsigma_cof.row(ci).dot(g_i) -
                                              t.drho_J_f[ci] * phi_i);
              }
              for (int it = 0; it < np; ++it)
                M(4 * nv + it, col) += w * t.ddiv * cv.p_value(it, q);
              // mesh motion, component-diagonal
              for (int it = 0; it < nv; ++it) {
                if (space.u_node_on_interface(vscalars[it])) continue;
                M(2 * nv + 2 * it + cj, col) +=
                    w * par.alpha_mesh * cv.v_grad(it, q).dot(g_j);
              }
            }
          }
        }
        for (int jt = 0; jt < np; ++jt) {
          const FluidTangent t = kernels::fluid_tangent_p(f, cv.p_value(jt, q));
          const int col = 4 * nv + jt;
          for (int it = 0; it < nv; ++it) {
            const Eigen::Vector2d& g_i = cv.v_grad(it, q);
            for (int ci = 0; ci < 2; ++ci)
              M(2 * it + ci, col) += w * t.dsigma_cof.row(ci).dot(g_i);
          }
        }
      } else {
        const SolidQ m = kernels::make_solid_q(par, s, cv.point(q));
        for (int jt = 0; jt < nv; ++jt) {
          const double phi_j = cv.v_value(jt, q);
          const Eigen::Vector2d& g_j = cv.v_grad(jt, q);
          for (int cj = 0; cj < 2; ++cj) {
            // displacement trial -> solid momentum rows
            Eigen::Matrix2d dF = Eigen::Matrix2d::Zero();
            dF.row(cj) = g_j.transpose();
            const Eigen::Matrix2d dFS = kernels::solid_tangent_FS(par, m, dF);
            const int ucol = 2 * nv + 2 * jt + cj;
            for (int it = 0; it < nv; ++it) {
              const Eigen::Vector2d& g_i = cv.v_grad(it, q);
              for (int ci = 0; ci < 2; ++ci) M(2 * it + ci, ucol) += w * dFS.row(ci).dot(g_i);
            }
            // velocity trial -> (v, psi_u) rows
            const int vcol = 2 * jt + cj;
            for (int it = 0; it < nv; ++it)
              M(2 * nv + 2 * it + cj, vcol) += w * cv.v_value(it, q) * phi_j;
          }
        }
        for (int jt = 0; jt < np; ++jt) {
          const double phi_j = cv.p_value(jt, q);
          const Eigen::Vector2d& g_j = cv.p_grad(jt, q);
          const int col = 4 * nv + jt;
          for (int it = 0; it < np; ++it)
            M(4 * nv + it, col) +=
                w * par.alpha_p * (cv.p_grad(it, q).dot(g_j) + cv.p_value(it, q) * phi_j);
        }
      }
    }

    if (cell.material == 0 && bcs.outflow_id >= 0) {
      for (int face = 0; face < 4; ++face) {
        if (cell.boundary_id[face] != bcs.outflow_id) continue;
        ws.fv_disc.reinit(geom, face);
        if (!ws.same_space) ws.fv_state.reinit(geom, face);
        const FaceValues& fv = ws.fv_disc;
        for (int q = 0; q < fv.n_q(); ++q) {
          const QState s = kernels::evaluate_state_face(fv_state, xs, q);
          const Kinematics k = make_kinematics(s.grad_u);
          if (k.J <= 0.0) throw InvalidStateError();
          const Eigen::Vector2d n = fv.normal(q);
          const double w = fv.JxW(q);
          for (int jt = 0; jt < nv; ++jt) {
            const Eigen::Vector2d& g_j = fv.v_grad(jt, q);
            for (int cj = 0; cj < 2; ++cj) {
              Eigen::Matrix2d dg = Eigen::Matrix2d::Zero();
              dg.row(cj) = g_j.transpose();
              const Eigen::Vector2d dTv = kernels::do_nothing_tangent_v(par, k, dg, n);
              const Eigen::Vector2d dTu = kernels::do_nothing_tangent_u(par, s, k, dg, n);
              for (int it = 0; it < nv; ++it) {
                const double phi_i = fv.v_value(it, q);
                for (int ci = 0; ci < 2; ++ci) {
                  M(2 * it + ci, 2 * jt + cj) += w * dTv[ci] * phi_i;
                  M(2 * it + ci, 2 * nv + 2 * jt + cj) += w * dTu[ci] * phi_i;
                }
              }
            }
          }
        }
      }
    }

    const auto& dofs = space.cell_dofs(ac);
    if (constraints) {
      distribute_local_to_global(M, dofs, *constraints, A);
    } else {
      for (size_t i = 0; i < dofs.size(); ++i)
        for (size_t j = 0; j < dofs.size(); ++j)
          if (M(i, j) != 0.0) scatter_add(A, dofs[i], dofs[j], M(i, j));
    }
  }

  if (constraints) finalize_constrained_rows(*constraints, A);
}

void evaluate_field(const MixedSpace& space, const Eigen::VectorXd& state, int cell,
                    const Eigen::Vector2d& xi, Field field, Eigen::Vector2d& value,
                    Eigen::Matrix2d& gradient) {
  const Mesh& mesh = space.mesh();
  const int ac = mesh.active_index(cell);
  if (ac < 0) throw std::invalid_argument("evaluate_field: cell not active");
  const CellGeometry geom = mesh.cell_geometry(cell);
  const Eigen::Matrix2d jinv_t = geom.jacobian(xi).inverse().transpose();

  value.setZero();
  gradient.setZero();
  if (field == Field::Pressure) {
    const ScalarElement elem(space.degree_p());
    const auto& sc = space.pressure_layout().cell_dofs[ac];
    for (int j = 0; j < elem.n_nodes(); ++j) {
      const double coef = state[space.p_dof(sc[j])];
      value[0] += coef * elem.value(j, xi);
      gradient.row(0) += coef * (jinv_t * elem.gradient(j, xi)).transpose();
    }
    return;
  }
  const ScalarElement elem(space.degree_v());
  const auto& sc = space.velocity_layout().cell_dofs[ac];
  for (int j = 0; j < elem.n_nodes(); ++j) {
    const double phi = elem.value(j, xi);
    const Eigen::Vector2d g = jinv_t * elem.gradient(j, xi);
    for (int comp = 0; comp < 2; ++comp) {
      const double coef = (field == Field::Velocity) ? state[space.v_dof(sc[j], comp)]
                                                     : state[space.u_dof(sc[j], comp)];
      value[comp] += coef * phi;
      gradient.row(comp) += coef * g.transpose();
    }
  }
}

}  // namespace fsidwr
