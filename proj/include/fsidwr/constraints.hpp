#pragma once

#include <Eigen/Core>
#include <functional>
#include <unordered_map>
#include <vector>

#include "fsidwr/space.hpp"

namespace fsidwr {

/// Affine constraint x_slave = sum w_i x_master_i + inhomogeneity.
struct Constraint {
  std::vector<std::pair<int, double>> entries;
  double inhomogeneity = 0.0;
};

/// Closed (flattened) set of affine DoF constraints covering hanging nodes
/// and Dirichlet values. After close(), no master of any constraint is
/// itself constrained.
class ConstraintSet {
 public:
  bool is_constrained(int dof) const { return map_.count(dof) > 0; }
  const Constraint* get(int dof) const {
    const auto it = map_.find(dof);
    return it == map_.end() ? nullptr : &it->second;
  }
  int n_constraints() const { return static_cast<int>(map_.size()); }

  void add(int dof, Constraint c) { map_[dof] = std::move(c); }
  void set_dirichlet(int dof, double value) { map_[dof] = Constraint{{}, value}; }

  /// Resolves constraint chains so that every master is unconstrained.
  void close();

  /// Overwrites constrained entries of x from their masters. Inhomogeneities
  /// are included unless homogeneous, which is the form used for Newton
  /// increments and adjoint solves.
  void distribute(Eigen::VectorXd& x, bool homogeneous = false) const;

  /// Transfers residual entries of constrained rows to their masters and
  /// zeroes the constrained rows (transpose application of distribute).
  void condense(Eigen::VectorXd& r) const;

  /// Largest violation |x_c - (sum w x_m + g)| over all constraints.
  double max_violation(const Eigen::VectorXd& x, bool homogeneous = false) const;

  std::vector<int> constrained_dofs() const;

 private:
  std::unordered_map<int, Constraint> map_;
};

/// Scalar-level hanging-node constraints for one layout:
/// (slave scalar dof, masters with weights). Weights are the coarse-side
/// shape values at the fine support points, so fields of the layout degree
/// stay exactly continuous across 1-irregular faces.
std::vector<std::pair<int, std::vector<std::pair<int, double>>>> scalar_hanging_constraints(
    const Mesh& mesh, const ScalarLayout& layout);

struct DirichletSpec {
  enum class Field { Velocity, Displacement };
  int boundary_id = -1;
  Field field = Field::Velocity;
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> value;
  std::array<bool, 2> components{true, true};
};

/// Hanging constraints for all fields plus Dirichlet rows. Where a DoF is
/// both hanging and Dirichlet, Dirichlet wins; conflicting Dirichlet specs
/// are resolved by list order (later specs overwrite earlier ones).
ConstraintSet build_constraints(const MixedSpace& space,
                                const std::vector<DirichletSpec>& dirichlet);

}  // namespace fsidwr
