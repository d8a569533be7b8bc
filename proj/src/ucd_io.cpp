#include "fsidwr/ucd_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fsidwr {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("read_ucd: line " + std::to_string(line) + ": " + what);
}

struct LineReader {
  std::istream& in;
  int line_no = 0;
  bool next(std::istringstream& out) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      out = std::istringstream(line);
      return true;
    }
    return false;
  }
};

}  // namespace

Mesh read_ucd(std::istream& in) {
  LineReader reader{in};
  std::istringstream ls;

  if (!reader.next(ls)) fail(reader.line_no, "missing header");
  long n_nodes = 0, n_elements = 0;
  if (!(ls >> n_nodes >> n_elements) || n_nodes < 1 || n_elements < 1)
    fail(reader.line_no, "malformed header");

  std::vector<Eigen::Vector2d> vertices(n_nodes);
  std::map<long, int> node_index;
  for (long i = 0; i < n_nodes; ++i) {
    if (!reader.next(ls)) fail(reader.line_no, "unexpected end of vertex list");
    long id;
    double x, y, z;
    if (!(ls >> id >> x >> y >> z)) fail(reader.line_no, "malformed vertex");
    if (node_index.count(id)) fail(reader.line_no, "duplicate vertex id");
    node_index[id] = static_cast<int>(i);
    vertices[i] = {x, y};
  }

  std::vector<Cell> cells;
  std::vector<std::array<long, 3>> lines;  // (a, b, boundary id)
  std::vector<int> line_numbers;
  for (long e = 0; e < n_elements; ++e) {
    if (!reader.next(ls)) fail(reader.line_no, "unexpected end of element list");
    long id, mat;
    std::string kind;
    if (!(ls >> id >> mat >> kind)) fail(reader.line_no, "malformed element");
    if (kind == "quad") {
      std::array<long, 4> v;
      if (!(ls >> v[0] >> v[1] >> v[2] >> v[3])) fail(reader.line_no, "malformed quad");
      Cell c;
      for (int i = 0; i < 4; ++i) {
        const auto it = node_index.find(v[i]);
        if (it == node_index.end()) fail(reader.line_no, "quad references unknown vertex");
        c.verts[i] = it->second;
      }
      c.material = static_cast<int>(mat);
      // enforce counterclockwise orientation
      const auto& p = vertices;
      double area2 = 0.0;
      for (int i = 0; i < 4; ++i) {
        const Eigen::Vector2d& a = p[c.verts[i]];
        const Eigen::Vector2d& b = p[c.verts[(i + 1) % 4]];
        area2 += a[0] * b[1] - b[0] * a[1];
      }
      if (area2 < 0.0) std::swap(c.verts[1], c.verts[3]);
      cells.push_back(c);
    } else if (kind == "line") {
      long a, b;
      if (!(ls >> a >> b)) fail(reader.line_no, "malformed line element");
      lines.push_back({a, b, mat});
      line_numbers.push_back(reader.line_no);
    } else {
      fail(reader.line_no, "unsupported element type '" + kind + "' (only 2D quads)");
    }
  }
  if (cells.empty()) fail(reader.line_no, "mesh contains no quad cells");

  // Attach boundary ids: match line elements against cell faces.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_map;
  for (int c = 0; c < static_cast<int>(cells.size()); ++c)
    for (int f = 0; f < 4; ++f) {
      const int a = cells[c].verts[face_corners[f][0]];
      const int b = cells[c].verts[face_corners[f][1]];
      edge_map[{std::min(a, b), std::max(a, b)}].push_back({c, f});
    }
  for (size_t l = 0; l < lines.size(); ++l) {
    const auto ia = node_index.find(lines[l][0]);
    const auto ib = node_index.find(lines[l][1]);
    if (ia == node_index.end() || ib == node_index.end())
      fail(line_numbers[l], "boundary line references unknown vertex");
    const auto it = edge_map.find({std::min(ia->second, ib->second), std::max(ia->second, ib->second)});
    if (it == edge_map.end()) fail(line_numbers[l], "boundary line matches no cell face");
    if (it->second.size() != 1) fail(line_numbers[l], "boundary line lies on an interior face");
    const auto& [c, f] = it->second.front();
    cells[c].boundary_id[f] = static_cast<int>(lines[l][2]);
  }
  for (const auto& [key, owners] : edge_map) {
    (void)key;
    if (owners.size() == 1 && cells[owners.front().first].boundary_id[owners.front().second] < 0)
      fail(0, "boundary face without a boundary id");
    if (owners.size() > 2) fail(0, "edge shared by more than two cells");
  }

  Mesh mesh(std::move(vertices), std::move(cells));
  mesh.validate();
  return mesh;
}

Mesh read_ucd_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_ucd: cannot open " + path);
  return read_ucd(in);
}

void write_ucd(const Mesh& mesh, std::ostream& out) {
  const auto boundary = mesh.boundary_faces();
  out << mesh.n_vertices() << " " << mesh.n_active_cells() + boundary.size() << " 0 0 0\n";
  out.precision(16);
  for (int v = 0; v < mesh.n_vertices(); ++v)
    out << v + 1 << " " << mesh.vertex(v)[0] << " " << mesh.vertex(v)[1] << " 0\n";
  long e = 1;
  for (const int c : mesh.active_cells()) {
    const Cell& cell = mesh.cell(c);
    out << e++ << " " << cell.material << " quad " << cell.verts[0] + 1 << " " << cell.verts[1] + 1
        << " " << cell.verts[2] + 1 << " " << cell.verts[3] + 1 << "\n";
  }
  for (const auto& [c, f, id] : boundary) {
    const Cell& cell = mesh.cell(c);
    out << e++ << " " << id << " line " << cell.verts[face_corners[f][0]] + 1 << " "
        << cell.verts[face_corners[f][1]] + 1 << "\n";
  }
}

}  // namespace fsidwr
