#include <cmath>
#include <iostream>
#include <limits>

#include "fsidwr/fsi_model.hpp"

namespace fsidwr {

NewtonResult newton_solve(const MixedSpace& space, const FsiParameters& par, const FlowBcs& bcs,
                          const ConstraintSet& constraints, Eigen::VectorXd& state,
                          const NewtonOptions& opts) {
  NewtonResult result;

  const SparseMatrix pattern = build_sparsity(
      space.n_dofs(),
      [&] {
        std::vector<std::vector<int>> sets;
        sets.reserve(space.mesh().n_active_cells());
        for (int ac = 0; ac < space.mesh().n_active_cells(); ++ac)
          sets.push_back(space.cell_dofs(ac));
        return sets;
      }(),
      constraints);

  Eigen::VectorXd residual = assemble_residual(space, par, bcs, state);
  constraints.condense(residual);
  double res_norm = residual.lpNorm<Eigen::Infinity>();
  result.residual_history.push_back(res_norm);

  const double tol = std::max(opts.abs_tolerance, opts.rel_tolerance * res_norm);

  while (res_norm > tol && result.iterations < opts.max_iterations) {
    SparseMatrix A = pattern;
    assemble_jacobian(space, par, bcs, state, A, &constraints);

    SparseLU lu(A);
    const Eigen::VectorXd rhs = -residual;
    Eigen::VectorXd delta = lu.solve(rhs);
    const double lin_res = (A * delta - rhs).norm();
    if (!(lin_res <= 1e-10 * std::max(1.0, rhs.norm())))
      throw std::runtime_error("newton_solve: linear solver residual check failed");
    constraints.distribute(delta, /*homogeneous=*/true);

    // Backtracking: halve the step until the condensed residual decreases;
    // an invalid state (det F <= 0) counts as no decrease.
    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial_state, trial_residual;
    for (int cut = 0; cut <= opts.max_backtracks; ++cut) {
      trial_state = state + alpha * delta;
      double trial_norm = std::numeric_limits<double>::infinity();
      try {
        trial_residual = assemble_residual(space, par, bcs, trial_state);
        constraints.condense(trial_residual);
        trial_norm = trial_residual.lpNorm<Eigen::Infinity>();
      } catch (const InvalidStateError&) {
      }
      if (trial_norm < res_norm) {
        state = trial_state;
        residual = trial_residual;
        res_norm = trial_norm;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    ++result.iterations;
    if (!accepted) {
      result.converged = false;
      return result;
    }
    result.residual_history.push_back(res_norm);
    if (!opts.quiet)
      std::cout << "  newton " << result.iterations << ": |r| = " << res_norm << "\n";
  }

  result.converged = res_norm <= tol;
  return result;
}

}  // namespace fsidwr
