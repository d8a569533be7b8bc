#include "fsidwr/space.hpp"

#include <map>

namespace fsidwr {

ScalarLayout build_scalar_layout(const Mesh& mesh, int degree) {
  ScalarLayout lay;
  lay.degree = degree;
  const int k = degree;
  const int per_edge = k - 1;
  const ScalarElement elem(k);

  std::map<int, int> vertex_dof;
  // edge key -> DoFs ordered from the smaller vertex id
  std::map<std::pair<int, int>, std::vector<int>> edge_dofs;

  lay.cell_dofs.resize(mesh.n_active_cells());

  int next = 0;
  auto support = [&](int cell, int node) {
    return mesh.cell_geometry(cell).map(ScalarElement(k).node(node));
  };

  for (int ac = 0; ac < mesh.n_active_cells(); ++ac) {
    const int c = mesh.active_cells()[ac];
    const Cell& cell = mesh.cell(c);
    std::vector<int>& dofs = lay.cell_dofs[ac];
    dofs.assign(elem.n_nodes(), -1);

    auto assign = [&](int node, int dof) { dofs[node] = dof; };

    // corners: local nodes (0,0), (k,0), (k,k), (0,k)
    const std::array<int, 4> corner_nodes = {0, k, (k + 1) * (k + 1) - 1, k * (k + 1)};
    for (int i = 0; i < 4; ++i) {
      const int v = cell.verts[i];
      auto [it, inserted] = vertex_dof.try_emplace(v, next);
      if (inserted) {
        lay.support_points.push_back(mesh.vertex(v));
        ++next;
      }
      assign(corner_nodes[i], it->second);
    }

    // edges: nodes strictly inside each face, ordered along CCW traversal
    if (per_edge > 0) {
      for (int f = 0; f < 4; ++f) {
        const int a = cell.verts[face_corners[f][0]];
        const int b = cell.verts[face_corners[f][1]];
        const auto key = std::make_pair(std::min(a, b), std::max(a, b));
        auto [it, inserted] = edge_dofs.try_emplace(key);
        if (inserted) {
          it->second.resize(per_edge);
          for (int j = 0; j < per_edge; ++j) it->second[j] = next + j;
          next += per_edge;
          // support points from this first-owner cell, oriented from min(a,b)
          for (int j = 0; j < per_edge; ++j) {
            const double t_from_a = static_cast<double>(j + 1) / k;
            const double t = (a < b) ? t_from_a : 1.0 - t_from_a;
            const Eigen::Vector2d xi = face_reference_point(f, t);
            Eigen::Vector2d dummy_xi = xi;
            (void)dummy_xi;
            lay.support_points.push_back(mesh.cell_geometry(c).map(xi));
          }
        }
        for (int j = 0; j < per_edge; ++j) {
          // local node index of the (j+1)-th point along the CCW traversal
          int node;
          switch (f) {
            case 0: node = (j + 1); break;
            case 1: node = (j + 1) * (k + 1) + k; break;
            case 2: node = (k - (j + 1)) + k * (k + 1); break;
            default: node = (k - (j + 1)) * (k + 1); break;
          }
          const int idx_from_min = (a < b) ? j : per_edge - 1 - j;
          assign(node, it->second[idx_from_min]);
        }
      }
    }

    // interior nodes
    for (int iy = 1; iy < k; ++iy)
      for (int ix = 1; ix < k; ++ix) {
        const int node = iy * (k + 1) + ix;
        assign(node, next);
        lay.support_points.push_back(support(c, node));
        ++next;
      }
  }
  lay.n_dofs = next;
  return lay;
}

std::vector<int> face_scalar_dofs(const ScalarLayout& lay, const Mesh& mesh, int cell, int face) {
  const int k = lay.degree;
  const int ac = mesh.active_index(cell);
  const auto& dofs = lay.cell_dofs[ac];
  std::vector<int> out(k + 1);
  for (int j = 0; j <= k; ++j) {
    int node;
    switch (face) {
      case 0: node = j; break;
      case 1: node = j * (k + 1) + k; break;
      case 2: node = (k - j) + k * (k + 1); break;
      default: node = (k - j) * (k + 1); break;
    }
    out[j] = dofs[node];
  }
  return out;
}

MixedSpace::MixedSpace(const Mesh& mesh, int degree_v, int degree_p)
    : mesh_(&mesh),
      lay_v_(build_scalar_layout(mesh, degree_v)),
      lay_p_(build_scalar_layout(mesh, degree_p)) {
  n_dofs_ = 4 * lay_v_.n_dofs + lay_p_.n_dofs;

  const int nv = static_cast<int>(lay_v_.cell_dofs[0].size());
  const int np = static_cast<int>(lay_p_.cell_dofs[0].size());
  cell_dofs_.resize(mesh.n_active_cells());
  for (int ac = 0; ac < mesh.n_active_cells(); ++ac) {
    std::vector<int>& dofs = cell_dofs_[ac];
    dofs.resize(4 * nv + np);
    for (int j = 0; j < nv; ++j) {
      const int s = lay_v_.cell_dofs[ac][j];
      dofs[2 * j] = v_dof(s, 0);
      dofs[2 * j + 1] = v_dof(s, 1);
      dofs[2 * nv + 2 * j] = u_dof(s, 0);
      dofs[2 * nv + 2 * j + 1] = u_dof(s, 1);
    }
    for (int j = 0; j < np; ++j) dofs[4 * nv + j] = p_dof(lay_p_.cell_dofs[ac][j]);
  }

  interface_node_.assign(lay_v_.n_dofs, 0);
  for (const auto& [c, f] : mesh.interface_faces())
    for (const int s : face_scalar_dofs(lay_v_, mesh, c, f)) interface_node_[s] = 1;
}

}  // namespace fsidwr
