#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <optional>
#include <vector>

#include "fsidwr/geometry.hpp"

namespace fsidwr {

struct CircleManifold {
  Eigen::Vector2d center;
  double radius = 0.0;
};

/// Quadrilateral cell of the refinement forest. Corners are stored
/// counterclockwise; faces follow face_corners (0:S, 1:E, 2:N, 3:W).
struct Cell {
  std::array<int, 4> verts{};
  int material = 0;
  int level = 0;
  int parent = -1;
  std::array<int, 4> children{-1, -1, -1, -1};
  /// -1 on interior faces, else the boundary id of the face.
  std::array<int, 4> boundary_id{-1, -1, -1, -1};

  bool is_active() const { return children[0] < 0; }
};

/// Coarse face with one hanging vertex; the two fine cells are ordered along
/// the coarse face traversal (fine[0] contains the first coarse corner).
struct HangingFace {
  int coarse_cell = -1;
  int coarse_face = -1;
  int mid_vertex = -1;
  std::array<int, 2> fine_cells{};
  std::array<int, 2> fine_faces{};
};

/// Hierarchical 1-irregular quadrilateral mesh. Instances are immutable
/// after construction; refine() produces a new generation.
class Mesh {
 public:
  Mesh() = default;
  Mesh(std::vector<Eigen::Vector2d> vertices, std::vector<Cell> root_cells);

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_active_cells() const { return static_cast<int>(active_.size()); }
  const Eigen::Vector2d& vertex(int v) const { return vertices_[v]; }
  const Cell& cell(int c) const { return cells_[c]; }
  int n_cells_total() const { return static_cast<int>(cells_.size()); }

  /// Tree indices of the active cells, in deterministic (creation) order.
  const std::vector<int>& active_cells() const { return active_; }
  /// Position of an active cell in active_cells(), or -1.
  int active_index(int cell) const;

  void attach_circle_manifold(int boundary_id, const CircleManifold& manifold);
  const std::map<int, CircleManifold>& manifolds() const { return manifolds_; }

  CellGeometry cell_geometry(int cell) const;

  /// Faces separating fluid (material 0) from solid (material 1), reported
  /// once each from the fluid side as (cell, local face).
  std::vector<std::pair<int, int>> interface_faces() const;

  /// All active boundary faces as (cell, local face, boundary id).
  std::vector<std::array<int, 3>> boundary_faces() const;

  std::vector<HangingFace> hanging_faces() const;

  /// Active neighbor of equal face size across (cell, face), or -1 when the
  /// face is a boundary face or the neighborhood is non-conforming there.
  int equal_neighbor(int cell, int face) const;

  /// True if no active face carries more than one hanging vertex.
  bool is_one_irregular() const;

  /// Sum of active cell areas under the cell geometry maps (3x3 Gauss).
  double total_area() const;

  /// Throws std::runtime_error on inverted cells, missing boundary ids on
  /// boundary edges, or conformity defects.
  void validate() const;

  /// New mesh generation: marked active cells (tree indices) split in four,
  /// plus the closure needed to keep the mesh 1-irregular. New boundary
  /// vertices on manifold faces are placed on the arc.
  Mesh refine(const std::vector<int>& marked_cells) const;

  Mesh refine_globally() const;

 private:
  using EdgeKey = std::pair<int, int>;
  static EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }
  std::array<int, 2> face_verts(int cell, int face) const;
  void rebuild_active();
  Eigen::Vector2d midpoint_on_face(int cell, int face) const;

  std::vector<Eigen::Vector2d> vertices_;
  std::vector<Cell> cells_;
  std::vector<int> active_;
  std::map<int, int> active_index_;
  std::map<int, CircleManifold> manifolds_;

  /// Midpoint vertex of every edge that was ever split.
  std::map<EdgeKey, int> edge_midpoint_;
  /// Inverse: vertex -> the edge it bisects.
  std::map<int, EdgeKey> midpoint_parent_;
  /// Active-mesh edge ownership, rebuilt per generation.
  std::map<EdgeKey, std::vector<std::pair<int, int>>> edge_owners_;
};

}  // namespace fsidwr
