#pragma once

#include <Eigen/Core>
#include <functional>
#include <stdexcept>

#include "fsidwr/constraints.hpp"
#include "fsidwr/linalg.hpp"
#include "fsidwr/space.hpp"

namespace fsidwr {

/// Material and model constants of the monolithic ALE system.
struct FsiParameters {
  double rho_f = 1e3;       ///< fluid density [kg/m^3]
  double nu_f = 1e-3;       ///< kinematic viscosity [m^2/s]
  double rho_s = 1e3;       ///< solid density [kg/m^3]
  double mu_s = 0.5e6;      ///< Lame mu [Pa]
  double lambda_s = 2.0e6;  ///< Lame lambda [Pa]
  double alpha_mesh = 1.0;  ///< harmonic mesh-motion stiffness
  double alpha_p = 1e-8;    ///< solid pressure-extension coefficient
  bool with_convection = true;
  /// Volume forces; both zero for the benchmarks.
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> body_force_fluid;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> body_force_solid;

  void check() const {
    if (rho_f <= 0 || nu_f <= 0 || rho_s <= 0 || mu_s <= 0 || lambda_s < 0 || alpha_p <= 0 ||
        alpha_mesh <= 0)
      throw std::invalid_argument("FsiParameters: constants out of range");
  }
};

/// Boundary data of the flow problem: Dirichlet specs plus the outflow id
/// carrying the do-nothing correction term.
struct FlowBcs {
  std::vector<DirichletSpec> dirichlet;
  int outflow_id = -1;
};

/// State with non-positive det(F) at a quadrature point; Newton's line
/// search treats this as a rejected step.
struct InvalidStateError : std::runtime_error {
  InvalidStateError() : std::runtime_error("invalid state: det(F) <= 0") {}
};

/// Raw Galerkin residual of the stationary monolithic system,
/// residual(psi) = A(U)(psi) - F(psi), with no constraint handling.
/// The state may live on a different (same-mesh) space than the test space;
/// it is evaluated exactly at the test space's quadrature points.
Eigen::VectorXd assemble_residual(const MixedSpace& space, const FsiParameters& par,
                                  const FlowBcs& bcs, const MixedSpace& state_space,
                                  const Eigen::VectorXd& state);

inline Eigen::VectorXd assemble_residual(const MixedSpace& space, const FsiParameters& par,
                                         const FlowBcs& bcs, const Eigen::VectorXd& state) {
  return assemble_residual(space, par, bcs, space, state);
}

/// Directional derivative A'_U(U)(phi_j, psi_i) scattered into the given
/// pattern. With constraints, rows/columns are eliminated symmetrically and
/// constrained diagonals set to 1; without, the raw Jacobian is produced
/// (finite-difference testable).
void assemble_jacobian(const MixedSpace& space, const FsiParameters& par, const FlowBcs& bcs,
                       const MixedSpace& state_space, const Eigen::VectorXd& state,
                       SparseMatrix& matrix, const ConstraintSet* constraints);

inline void assemble_jacobian(const MixedSpace& space, const FsiParameters& par,
                              const FlowBcs& bcs, const Eigen::VectorXd& state,
                              SparseMatrix& matrix, const ConstraintSet* constraints) {
  assemble_jacobian(space, par, bcs, space, state, matrix, constraints);
}

/// Evaluates one field of a state vector at a reference point of an active
/// cell; gradients are returned in physical coordinates.
enum class Field { Velocity, Displacement, Pressure };
void evaluate_field(const MixedSpace& space, const Eigen::VectorXd& state, int cell,
                    const Eigen::Vector2d& xi, Field field, Eigen::Vector2d& value,
                    Eigen::Matrix2d& gradient);

struct NewtonOptions {
  int max_iterations = 20;
  double rel_tolerance = 1e-8;   ///< relative to the initial residual norm
  double abs_tolerance = 1e-10;  ///< absolute floor
  int max_backtracks = 10;
  bool quiet = false;
};

struct NewtonResult {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  ///< max-norm, including entry 0
};

/// Newton with backtracking line search on the condensed residual. The
/// initial state must satisfy the constraints; the result does as well.
NewtonResult newton_solve(const MixedSpace& space, const FsiParameters& par, const FlowBcs& bcs,
                          const ConstraintSet& constraints, Eigen::VectorXd& state,
                          const NewtonOptions& opts = {});

}  // namespace fsidwr
