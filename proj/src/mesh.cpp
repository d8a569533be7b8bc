#include "fsidwr/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fsidwr/quadrature.hpp"

namespace fsidwr {

Mesh::Mesh(std::vector<Eigen::Vector2d> vertices, std::vector<Cell> root_cells)
    : vertices_(std::move(vertices)), cells_(std::move(root_cells)) {
  rebuild_active();
}

void Mesh::rebuild_active() {
  active_.clear();
  active_index_.clear();
  edge_owners_.clear();
  for (int c = 0; c < static_cast<int>(cells_.size()); ++c) {
    if (!cells_[c].is_active()) continue;
    active_index_[c] = static_cast<int>(active_.size());
    active_.push_back(c);
    for (int f = 0; f < 4; ++f) {
      const auto [a, b] = face_verts(c, f);
      edge_owners_[edge_key(a, b)].push_back({c, f});
    }
  }
}

int Mesh::active_index(int cell) const {
  const auto it = active_index_.find(cell);
  return it == active_index_.end() ? -1 : it->second;
}

std::array<int, 2> Mesh::face_verts(int cell, int face) const {
  const Cell& c = cells_[cell];
  return {c.verts[face_corners[face][0]], c.verts[face_corners[face][1]]};
}

void Mesh::attach_circle_manifold(int boundary_id, const CircleManifold& m) {
  manifolds_[boundary_id] = m;
  // Snap existing vertices of faces with this id onto the circle.
  for (const int c : active_) {
    for (int f = 0; f < 4; ++f) {
      if (cells_[c].boundary_id[f] != boundary_id) continue;
      for (const int lv : face_corners[f]) {
        Eigen::Vector2d& x = vertices_[cells_[c].verts[lv]];
        const Eigen::Vector2d d = x - m.center;
        const double r = d.norm();
        if (std::abs(r - m.radius) > 1e-6 * m.radius)
          throw std::runtime_error("attach_circle_manifold: vertex too far from circle");
        x = m.center + (m.radius / r) * d;
      }
    }
  }
}

namespace {
std::optional<ArcSegment> make_arc(const CircleManifold& m, const Eigen::Vector2d& a,
                                   const Eigen::Vector2d& b) {
  ArcSegment arc;
  arc.center = m.center;
  arc.radius = m.radius;
  arc.theta0 = std::atan2(a[1] - m.center[1], a[0] - m.center[0]);
  double t1 = std::atan2(b[1] - m.center[1], b[0] - m.center[0]);
  while (t1 - arc.theta0 > M_PI) t1 -= 2 * M_PI;
  while (t1 - arc.theta0 < -M_PI) t1 += 2 * M_PI;
  arc.theta1 = t1;
  return arc;
}
}  // namespace

CellGeometry Mesh::cell_geometry(int cell) const {
  const Cell& c = cells_[cell];
  CellGeometry g;
  for (int i = 0; i < 4; ++i) g.corners[i] = vertices_[c.verts[i]];
  for (int f = 0; f < 4; ++f) {
    const int id = c.boundary_id[f];
    if (id < 0) continue;
    const auto it = manifolds_.find(id);
    if (it == manifolds_.end()) continue;
    g.arcs[f] = make_arc(it->second, g.corners[face_corners[f][0]], g.corners[face_corners[f][1]]);
  }
  return g;
}

Eigen::Vector2d Mesh::midpoint_on_face(int cell, int face) const {
  const Cell& c = cells_[cell];
  const int id = c.boundary_id[face];
  if (id >= 0) {
    const auto it = manifolds_.find(id);
    if (it != manifolds_.end()) {
      const auto arc = make_arc(it->second, vertices_[c.verts[face_corners[face][0]]],
                                vertices_[c.verts[face_corners[face][1]]]);
      return arc->point(0.5);
    }
  }
  const auto [a, b] = face_verts(cell, face);
  return 0.5 * (vertices_[a] + vertices_[b]);
}

int Mesh::equal_neighbor(int cell, int face) const {
  const auto [a, b] = face_verts(cell, face);
  const auto it = edge_owners_.find(edge_key(a, b));
  if (it == edge_owners_.end()) return -1;
  for (const auto& [c, f] : it->second)
    if (c != cell) return c;
  return -1;
}

std::vector<std::pair<int, int>> Mesh::interface_faces() const {
  std::vector<std::pair<int, int>> out;
  for (const int c : active_) {
    if (cells_[c].material != 0) continue;
    for (int f = 0; f < 4; ++f) {
      const int n = equal_neighbor(c, f);
      if (n >= 0) {
        if (cells_[n].material == 1) out.emplace_back(c, f);
        continue;
      }
      if (cells_[c].boundary_id[f] >= 0) continue;
      // Non-conforming: this fluid face is either half of a coarser solid
      // face or covers two finer solid faces.
      const auto [a, b] = face_verts(c, f);
      const auto mid = edge_midpoint_.find(edge_key(a, b));
      if (mid != edge_midpoint_.end()) {
        const auto o = edge_owners_.find(edge_key(a, mid->second));
        if (o != edge_owners_.end() && !o->second.empty() &&
            cells_[o->second.front().first].material == 1)
          out.emplace_back(c, f);
        continue;
      }
      for (const int v : {a, b}) {
        const auto par = midpoint_parent_.find(v);
        if (par == midpoint_parent_.end()) continue;
        const int other = (v == a) ? b : a;
        if (par->second.first != other && par->second.second != other) continue;
        const auto o = edge_owners_.find(par->second);
        if (o != edge_owners_.end() && !o->second.empty() &&
            cells_[o->second.front().first].material == 1)
          out.emplace_back(c, f);
        break;
      }
    }
  }
  return out;
}

std::vector<std::array<int, 3>> Mesh::boundary_faces() const {
  std::vector<std::array<int, 3>> out;
  for (const int c : active_)
    for (int f = 0; f < 4; ++f)
      if (cells_[c].boundary_id[f] >= 0) out.push_back({c, f, cells_[c].boundary_id[f]});
  return out;
}

std::vector<HangingFace> Mesh::hanging_faces() const {
  std::vector<HangingFace> out;
  for (const int c : active_) {
    for (int f = 0; f < 4; ++f) {
      if (cells_[c].boundary_id[f] >= 0) continue;
      const auto [a, b] = face_verts(c, f);
      if (equal_neighbor(c, f) >= 0) continue;
      const auto mid = edge_midpoint_.find(edge_key(a, b));
      if (mid == edge_midpoint_.end()) continue;
      const int m = mid->second;
      const auto o0 = edge_owners_.find(edge_key(a, m));
      const auto o1 = edge_owners_.find(edge_key(m, b));
      if (o0 == edge_owners_.end() || o1 == edge_owners_.end()) continue;
      if (o0->second.empty() || o1->second.empty()) continue;
      HangingFace h;
      h.coarse_cell = c;
      h.coarse_face = f;
      h.mid_vertex = m;
      h.fine_cells = {o0->second.front().first, o1->second.front().first};
      h.fine_faces = {o0->second.front().second, o1->second.front().second};
      out.push_back(h);
    }
  }
  return out;
}

bool Mesh::is_one_irregular() const {
  for (const auto& h : hanging_faces()) {
    const auto [a, b] = face_verts(h.coarse_cell, h.coarse_face);
    for (const auto sub : {edge_key(a, h.mid_vertex), edge_key(h.mid_vertex, b)}) {
      const auto mid = edge_midpoint_.find(sub);
      if (mid == edge_midpoint_.end()) continue;
      // A split sub-edge is only a violation if the split is active.
      if (edge_owners_.count(edge_key(sub.first, mid->second)) ||
          edge_owners_.count(edge_key(mid->second, sub.second)))
        return false;
    }
  }
  return true;
}

double Mesh::total_area() const {
  const CellQuadrature q = gauss_cell(3);
  double area = 0.0;
  for (const int c : active_) {
    const CellGeometry g = cell_geometry(c);
    for (int i = 0; i < q.size(); ++i) area += g.jacobian(q.points[i]).determinant() * q.weights[i];
  }
  return area;
}

void Mesh::validate() const {
  CellQuadrature q = gauss_cell(3);
  for (const int c : active_) {
    const CellGeometry g = cell_geometry(c);
    for (int i = 0; i < q.size(); ++i)
      if (g.jacobian(q.points[i]).determinant() <= 0.0)
        throw std::runtime_error("Mesh::validate: non-positive Jacobian in cell " +
                                 std::to_string(c));
    const Cell& cell = cells_[c];
    if (cell.material != 0 && cell.material != 1)
      throw std::runtime_error("Mesh::validate: material id out of range");
  }
  // Interior edges have two active owners (or a hanging split); boundary
  // edges exactly one owner and a boundary id.
  for (const auto& [key, owners] : edge_owners_) {
    if (owners.size() > 2) throw std::runtime_error("Mesh::validate: edge with >2 owners");
    if (owners.size() == 2) continue;
    const auto& [c, f] = owners.front();
    if (cells_[c].boundary_id[f] >= 0) continue;
    // must be one side of a hanging face
    const auto mid = edge_midpoint_.find(key);
    bool hanging = false;
    if (mid != edge_midpoint_.end())
      hanging = edge_owners_.count(edge_key(key.first, mid->second)) > 0;
    if (!hanging) {
      for (const int v : {key.first, key.second}) {
        const auto par = midpoint_parent_.find(v);
        if (par != midpoint_parent_.end() && edge_owners_.count(par->second)) hanging = true;
      }
    }
    if (!hanging)
      throw std::runtime_error("Mesh::validate: interior edge with one owner and no hanging mate");
  }
  if (!is_one_irregular()) throw std::runtime_error("Mesh::validate: 1-irregularity violated");
}

Mesh Mesh::refine(const std::vector<int>& marked_cells) const {
  Mesh next(*this);

  std::set<int> marks;
  for (const int c : marked_cells) {
    if (c < 0 || c >= static_cast<int>(cells_.size()) || !cells_[c].is_active())
      throw std::invalid_argument("Mesh::refine: mark is not an active cell");
    marks.insert(c);
  }

  // Closure: a marked cell must not leave a coarser active neighbor more
  // than one level behind. Detect coarse neighbors through the midpoint
  // bookkeeping and mark them too, to fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const int c : std::vector<int>(marks.begin(), marks.end())) {
      for (int f = 0; f < 4; ++f) {
        const auto [a, b] = face_verts(c, f);
        if (equal_neighbor(c, f) >= 0 || cells_[c].boundary_id[f] >= 0) continue;
        if (edge_midpoint_.count(edge_key(a, b))) continue;  // we are the coarse side
        for (const int v : {a, b}) {
          const auto par = midpoint_parent_.find(v);
          if (par == midpoint_parent_.end()) continue;
          const int other = (v == a) ? b : a;
          if (par->second.first != other && par->second.second != other) continue;
          const auto o = next.edge_owners_.find(par->second);
          if (o == next.edge_owners_.end() || o->second.empty()) continue;
          const int coarse = o->second.front().first;
          if (!marks.count(coarse)) {
            marks.insert(coarse);
            changed = true;
          }
        }
      }
    }
  }

  for (const int c : marks) {
    Cell& parent = next.cells_[c];
    const CellGeometry geom = next.cell_geometry(c);

    std::array<int, 4> mid{};
    for (int f = 0; f < 4; ++f) {
      const auto [a, b] = next.face_verts(c, f);
      const EdgeKey key = edge_key(a, b);
      auto it = next.edge_midpoint_.find(key);
      if (it == next.edge_midpoint_.end()) {
        const int v = next.n_vertices();
        next.vertices_.push_back(next.midpoint_on_face(c, f));
        next.edge_midpoint_[key] = v;
        next.midpoint_parent_[v] = key;
        mid[f] = v;
      } else {
        mid[f] = it->second;
      }
    }
    const int center = next.n_vertices();
    next.vertices_.push_back(geom.map({0.5, 0.5}));

    const auto& v = parent.verts;
    const std::array<std::array<int, 4>, 4> child_verts = {{
        {v[0], mid[0], center, mid[3]},
        {mid[0], v[1], mid[1], center},
        {center, mid[1], v[2], mid[2]},
        {mid[3], center, mid[2], v[3]},
    }};
    // child faces lying on parent face f: (child, childface)
    const std::array<std::array<std::array<int, 2>, 2>, 4> face_children = {{
        {{{0, 0}, {1, 0}}},
        {{{1, 1}, {2, 1}}},
        {{{2, 2}, {3, 2}}},
        {{{3, 3}, {0, 3}}},
    }};

    std::array<int, 4> child_ids{};
    for (int k = 0; k < 4; ++k) {
      Cell child;
      child.verts = child_verts[k];
      child.material = parent.material;
      child.level = parent.level + 1;
      child.parent = c;
      child_ids[k] = static_cast<int>(next.cells_.size());
      next.cells_.push_back(child);
    }
    for (int f = 0; f < 4; ++f) {
      if (parent.boundary_id[f] < 0) continue;
      for (const auto& [ck, cf] : face_children[f])
        next.cells_[child_ids[ck]].boundary_id[cf] = parent.boundary_id[f];
    }
    next.cells_[c].children = child_ids;
  }

  next.rebuild_active();
  return next;
}

Mesh Mesh::refine_globally() const { return refine(active_); }

}  // namespace fsidwr
