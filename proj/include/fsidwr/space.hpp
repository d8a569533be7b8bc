#pragma once

#include <Eigen/Core>
#include <vector>

#include "fsidwr/element.hpp"
#include "fsidwr/mesh.hpp"

namespace fsidwr {

/// Global numbering of one continuous scalar Q_k space over the active mesh.
/// DoFs shared across cells are identified through the mesh entity carrying
/// them (vertex, edge, interior); numbering is deterministic in active-cell
/// order.
struct ScalarLayout {
  int degree = 0;
  int n_dofs = 0;
  /// Per active cell (in mesh.active_cells() order), the global scalar DoF
  /// of every local node in lexicographic node order.
  std::vector<std::vector<int>> cell_dofs;
  /// Physical support point of every global scalar DoF.
  std::vector<Eigen::Vector2d> support_points;
};

ScalarLayout build_scalar_layout(const Mesh& mesh, int degree);

/// Scalar DoFs on a given face of an active cell, ordered along the CCW face
/// traversal (k+1 entries including the endpoints).
std::vector<int> face_scalar_dofs(const ScalarLayout& layout, const Mesh& mesh, int cell, int face);

/// Monolithic (v, u, p) space: vector-valued velocity and displacement of
/// degree k_v sharing one scalar layout, scalar pressure of degree k_p.
/// Global DoF blocks: [v (2 per scalar node, x/y interleaved) | u | p].
class MixedSpace {
 public:
  MixedSpace(const Mesh& mesh, int degree_v, int degree_p);

  const Mesh& mesh() const { return *mesh_; }
  int n_dofs() const { return n_dofs_; }
  int degree_v() const { return lay_v_.degree; }
  int degree_p() const { return lay_p_.degree; }
  const ScalarLayout& velocity_layout() const { return lay_v_; }
  const ScalarLayout& pressure_layout() const { return lay_p_; }

  int v_dof(int scalar, int comp) const { return 2 * scalar + comp; }
  int u_dof(int scalar, int comp) const { return 2 * lay_v_.n_dofs + 2 * scalar + comp; }
  int p_dof(int scalar) const { return 4 * lay_v_.n_dofs + scalar; }

  /// Unified cell-local DoF map [v | u | p] for one active cell, matching
  /// the local layout used by the assembly kernels.
  const std::vector<int>& cell_dofs(int active_index) const { return cell_dofs_[active_index]; }

  /// True for velocity-layout scalar nodes lying on the fluid-solid
  /// interface; mesh-motion test rows are dropped there.
  bool u_node_on_interface(int scalar) const { return interface_node_[scalar] != 0; }

 private:
  const Mesh* mesh_;
  ScalarLayout lay_v_;
  ScalarLayout lay_p_;
  int n_dofs_ = 0;
  std::vector<std::vector<int>> cell_dofs_;
  std::vector<char> interface_node_;
};

}  // namespace fsidwr
