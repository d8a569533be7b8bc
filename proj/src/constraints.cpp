#include "fsidwr/constraints.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace fsidwr {

void ConstraintSet::close() {
  for (int pass = 0; pass < 32; ++pass) {
    bool substituted = false;
    for (auto& [dof, c] : map_) {
      std::vector<std::pair<int, double>> resolved;
      double inhom = c.inhomogeneity;
      bool changed = false;
      for (const auto& [m, w] : c.entries) {
        const auto it = map_.find(m);
        if (it == map_.end()) {
          resolved.emplace_back(m, w);
          continue;
        }
        changed = true;
        inhom += w * it->second.inhomogeneity;
        for (const auto& [mm, ww] : it->second.entries) resolved.emplace_back(mm, w * ww);
      }
      if (!changed) continue;
      // merge duplicate masters
      std::map<int, double> merged;
      for (const auto& [m, w] : resolved) merged[m] += w;
      c.entries.clear();
      for (const auto& [m, w] : merged)
        if (std::abs(w) > 1e-14) c.entries.emplace_back(m, w);
      c.inhomogeneity = inhom;
      substituted = true;
    }
    if (!substituted) return;
  }
  throw std::runtime_error("ConstraintSet::close: constraint chain did not terminate");
}

void ConstraintSet::distribute(Eigen::VectorXd& x, bool homogeneous) const {
  for (const auto& [dof, c] : map_) {
    double v = homogeneous ? 0.0 : c.inhomogeneity;
    for (const auto& [m, w] : c.entries) v += w * x[m];
    x[dof] = v;
  }
}

void ConstraintSet::condense(Eigen::VectorXd& r) const {
  for (const auto& [dof, c] : map_) {
    for (const auto& [m, w] : c.entries) r[m] += w * r[dof];
    r[dof] = 0.0;
  }
}

double ConstraintSet::max_violation(const Eigen::VectorXd& x, bool homogeneous) const {
  double worst = 0.0;
  for (const auto& [dof, c] : map_) {
    double v = homogeneous ? 0.0 : c.inhomogeneity;
    for (const auto& [m, w] : c.entries) v += w * x[m];
    worst = std::max(worst, std::abs(x[dof] - v));
  }
  return worst;
}

std::vector<int> ConstraintSet::constrained_dofs() const {
  std::vector<int> out;
  out.reserve(map_.size());
  for (const auto& [dof, c] : map_) out.push_back(dof);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, std::vector<std::pair<int, double>>>> scalar_hanging_constraints(
    const Mesh& mesh, const ScalarLayout& lay) {
  const int k = lay.degree;
  const ScalarElement elem(k);
  std::map<int, std::vector<std::pair<int, double>>> result;

  for (const HangingFace& h : mesh.hanging_faces()) {
    const std::vector<int> coarse = face_scalar_dofs(lay, mesh, h.coarse_cell, h.coarse_face);
    const int dof_A = coarse.front();

    for (int side = 0; side < 2; ++side) {
      const std::vector<int> fine =
          face_scalar_dofs(lay, mesh, h.fine_cells[side], h.fine_faces[side]);
      // Orient the fine traversal relative to the coarse parameter s in [0,1].
      // fine.front() is the scalar dof at the fine face's first CCW corner.
      const bool fwd = (side == 0) ? (fine.front() == dof_A) : (fine.back() == coarse.back());
      for (int j = 0; j <= k; ++j) {
        const int dof = fine[j];
        const double t = static_cast<double>(j) / k;
        double s;
        if (side == 0)
          s = fwd ? 0.5 * t : 0.5 * (1.0 - t);
        else
          s = fwd ? 0.5 + 0.5 * t : 1.0 - 0.5 * t;
        if (std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12) continue;  // shared corner
        if (result.count(dof)) continue;
        std::vector<std::pair<int, double>> entries;
        for (int i = 0; i <= k; ++i) {
          const double w = elem.value_1d(i, s);
          if (std::abs(w) > 1e-13) entries.emplace_back(coarse[i], w);
        }
        result[dof] = std::move(entries);
      }
    }
  }
  return {result.begin(), result.end()};
}

ConstraintSet build_constraints(const MixedSpace& space, const std::vector<DirichletSpec>& specs) {
  ConstraintSet cs;
  const Mesh& mesh = space.mesh();

  auto add_layout = [&](const ScalarLayout& lay, bool vector_fields) {
    for (const auto& [slave, masters] : scalar_hanging_constraints(mesh, lay)) {
      if (vector_fields) {
        for (int comp = 0; comp < 2; ++comp) {
          Constraint cv, cu;
          for (const auto& [m, w] : masters) {
            cv.entries.emplace_back(space.v_dof(m, comp), w);
            cu.entries.emplace_back(space.u_dof(m, comp), w);
          }
          cs.add(space.v_dof(slave, comp), std::move(cv));
          cs.add(space.u_dof(slave, comp), std::move(cu));
        }
      } else {
        Constraint cp;
        for (const auto& [m, w] : masters) cp.entries.emplace_back(space.p_dof(m), w);
        cs.add(space.p_dof(slave), std::move(cp));
      }
    }
  };
  add_layout(space.velocity_layout(), true);
  add_layout(space.pressure_layout(), false);

  for (const DirichletSpec& spec : specs) {
    for (const auto& [c, f, id] : mesh.boundary_faces()) {
      if (id != spec.boundary_id) continue;
      for (const int s : face_scalar_dofs(space.velocity_layout(), mesh, c, f)) {
        const Eigen::Vector2d g = spec.value(space.velocity_layout().support_points[s]);
        for (int comp = 0; comp < 2; ++comp) {
          if (!spec.components[comp]) continue;
          const int dof = (spec.field == DirichletSpec::Field::Velocity)
                              ? space.v_dof(s, comp)
                              : space.u_dof(s, comp);
          cs.set_dirichlet(dof, g[comp]);
        }
      }
    }
  }

  cs.close();
  return cs;
}

}  // namespace fsidwr
