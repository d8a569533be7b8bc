#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "fsidwr/mesh.hpp"
#include "fsidwr/ucd_io.hpp"
#include "test_helpers.hpp"

using namespace fsidwr;

namespace {

// Exhaustive O(n^2) adjacency scan: pairs of active cells sharing a full or
// half edge with different materials, reported from the fluid cell.
std::set<std::pair<int, int>> interface_oracle(const Mesh& m) {
  std::set<std::pair<int, int>> out;
  const auto& act = m.active_cells();
  auto face_seg = [&](int c, int f) {
    const auto fc = face_corners[f];
    return std::make_pair(m.vertex(m.cell(c).verts[fc[0]]), m.vertex(m.cell(c).verts[fc[1]]));
  };
  auto on_segment = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                       const Eigen::Vector2d& p) {
    const Eigen::Vector2d d = b - a;
    const double t = d.dot(p - a) / d.squaredNorm();
    if (t < -1e-12 || t > 1.0 + 1e-12) return false;
    return (a + t * d - p).norm() < 1e-12;
  };
  for (const int c0 : act) {
    if (m.cell(c0).material != 0) continue;
    for (const int c1 : act) {
      if (m.cell(c1).material != 1) continue;
      for (int f0 = 0; f0 < 4; ++f0) {
        const auto [a0, b0] = face_seg(c0, f0);
        for (int f1 = 0; f1 < 4; ++f1) {
          const auto [a1, b1] = face_seg(c1, f1);
          // overlap if both endpoints of the shorter edge lie on the longer
          const bool fluid_in_solid = on_segment(a1, b1, a0) && on_segment(a1, b1, b0);
          const bool solid_in_fluid = on_segment(a0, b0, a1) && on_segment(a0, b0, b1);
          if (fluid_in_solid || solid_in_fluid) out.insert({c0, f0});
        }
      }
    }
  }
  return out;
}

const char* unit_square_ucd = R"(# unit square
4 5 0 0 0
1 0 0 0
2 1 0 0
3 1 1 0
4 0 1 0
1 0 quad 1 2 3 4
2 2 line 1 2
3 1 line 2 3
4 2 line 3 4
5 0 line 4 1
)";

}  // namespace

TEST_CASE("read_ucd: unit square") {
  std::istringstream in(unit_square_ucd);
  const Mesh m = read_ucd(in);
  CHECK(m.n_active_cells() == 1);
  CHECK(m.n_vertices() == 4);
  CHECK(m.boundary_faces().size() == 4);
  CHECK(m.cell(0).material == 0);
}

TEST_CASE("read_ucd: error paths name the line") {
  std::istringstream tri("3 2 0 0 0\n1 0 0 0\n2 1 0 0\n3 0 1 0\n1 0 tri 1 2 3\n2 0 line 1 2\n");
  CHECK_THROWS_WITH_AS(read_ucd(tri), doctest::Contains("line 5"), std::runtime_error);
  std::istringstream dangling(
      "4 2 0 0 0\n1 0 0 0\n2 1 0 0\n3 1 1 0\n4 0 1 0\n1 0 quad 1 2 3 9\n2 0 line 1 2\n");
  CHECK_THROWS_AS(read_ucd(dangling), std::runtime_error);
  std::istringstream bad_header("x\n");
  CHECK_THROWS_AS(read_ucd(bad_header), std::runtime_error);
}

TEST_CASE("ucd round trip preserves the data model") {
  Mesh m = testing::make_fluid_solid_pair();
  std::ostringstream out;
  write_ucd(m, out);
  std::istringstream in(out.str());
  const Mesh m2 = read_ucd(in);
  REQUIRE(m2.n_active_cells() == m.n_active_cells());
  REQUIRE(m2.n_vertices() == m.n_vertices());
  for (int c = 0; c < m.n_active_cells(); ++c) {
    CHECK(m2.cell(c).material == m.cell(c).material);
    CHECK(m2.cell(c).boundary_id == m.cell(c).boundary_id);
  }
  for (int v = 0; v < m.n_vertices(); ++v) CHECK((m2.vertex(v) - m.vertex(v)).norm() < 1e-15);
}

TEST_CASE("refine: empty marking keeps the mesh") {
  const Mesh m = testing::make_grid(2, 2);
  const Mesh r = m.refine({});
  CHECK(r.n_active_cells() == m.n_active_cells());
}

TEST_CASE("refine: single cell becomes 4 cells, 9 vertices") {
  const Mesh m = testing::make_grid(1, 1);
  const Mesh r = m.refine({0});
  CHECK(r.n_active_cells() == 4);
  CHECK(r.n_vertices() == 9);
  r.validate();
  // children inherit boundary ids on the outer faces
  int with_id = 0;
  for (const auto& bf : r.boundary_faces()) {
    (void)bf;
    ++with_id;
  }
  CHECK(with_id == 8);
}

TEST_CASE("refine: closure keeps 1-irregularity") {
  Mesh m = testing::make_grid(2, 2);
  // refine cell 0 twice; the neighbors must be force-refined once
  Mesh r1 = m.refine({0});
  REQUIRE(r1.is_one_irregular());
  const int child = r1.cell(0).children[2];
  REQUIRE(child > 0);
  Mesh r2 = r1.refine({child});
  CHECK(r2.is_one_irregular());
  r2.validate();
  // brute-force scan over all active faces: every hanging face has exactly
  // one hanging vertex (already encoded in is_one_irregular), and levels of
  // face-adjacent cells differ by at most 1
  for (const auto& h : r2.hanging_faces()) {
    CHECK(r2.cell(h.fine_cells[0]).level - r2.cell(h.coarse_cell).level == 1);
    CHECK(r2.cell(h.fine_cells[1]).level - r2.cell(h.coarse_cell).level == 1);
  }
}

TEST_CASE("refine: area is conserved on straight meshes") {
  Mesh m = testing::make_grid(3, 2, 2.5, 0.41);
  const double a0 = m.total_area();
  Mesh r = m.refine({m.active_cells()[1], m.active_cells()[4]});
  r = r.refine({r.active_cells()[0], r.active_cells()[7]});
  CHECK(std::abs(r.total_area() - a0) < 1e-12 * a0);
}

TEST_CASE("interface faces match the exhaustive adjacency oracle") {
  Mesh m = testing::make_fluid_solid_pair();
  SUBCASE("conforming") {}
  SUBCASE("fluid side refined") { m = m.refine({0}); }
  SUBCASE("solid side refined") { m = m.refine({1}); }
  const auto faces = m.interface_faces();
  const auto oracle = interface_oracle(m);
  CHECK(faces.size() == oracle.size());
  for (const auto& cf : faces) CHECK(oracle.count(cf) == 1);
}

TEST_CASE("all-fluid mesh has no interface faces") {
  const Mesh m = testing::make_grid(3, 3);
  CHECK(m.interface_faces().empty());
}

TEST_CASE("circle manifold: refinement snaps new vertices to the arc") {
  // one cell with its bottom edge on the unit circle
  std::vector<Eigen::Vector2d> verts = {{1, 0}, {0, 1}, {0, 2}, {2, 0}};
  Cell c;
  c.verts = {0, 1, 2, 3};
  c.boundary_id = {7, 3, 3, 3};
  Mesh m({verts}, {c});
  m.attach_circle_manifold(7, {{0, 0}, 1.0});
  Mesh r = m.refine({0}).refine_globally();
  int on_circle = 0;
  for (const auto& [cell, face, id] : r.boundary_faces()) {
    if (id != 7) continue;
    for (const int lv : face_corners[face]) {
      const Eigen::Vector2d x = r.vertex(r.cell(cell).verts[lv]);
      CHECK(std::abs(x.norm() - 1.0) < 1e-12);
      ++on_circle;
    }
  }
  CHECK(on_circle > 4);
  r.validate();
}
