// SPDX-License-Identifier: Apache-2.0

#include "mxbem/geometry/off_io.hpp"

#include <fstream>
#include <sstream>

namespace mxbem {

namespace {

// Next content line (skips blanks and '#' comments); tracks line numbers.
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

SurfaceMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open OFF file: " + path);

  int lineno = 0;
  std::string line;
  if (!next_line(in, line, lineno)) throw MeshError(path + ": empty file");
  {
    std::istringstream ss(line);
    std::string magic;
    ss >> magic;
    if (magic != "OFF") {
      throw MeshError(path + ":" + std::to_string(lineno) + ": expected OFF header, got '" +
                      magic + "'");
    }
  }

  if (!next_line(in, line, lineno)) throw MeshError(path + ": missing counts line");
  long nv = 0, nf = 0, ne = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> nv >> nf >> ne) || nv < 0 || nf < 0) {
      throw MeshError(path + ":" + std::to_string(lineno) + ": malformed counts line '" +
                      line + "'");
    }
  }

  std::vector<Vec3> verts;
  verts.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!next_line(in, line, lineno)) {
      throw MeshError(path + ": unexpected end of file reading vertex " + std::to_string(i));
    }
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z)) {
      throw MeshError(path + ":" + std::to_string(lineno) + ": malformed vertex line '" +
                      line + "'");
    }
    verts.emplace_back(x, y, z);
  }

  std::vector<std::array<int, 3>> faces;
  faces.reserve(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    if (!next_line(in, line, lineno)) {
      throw MeshError(path + ": unexpected end of file reading face " + std::to_string(i));
    }
    std::istringstream ss(line);
    int n, a, b, c;
    if (!(ss >> n >> a >> b >> c) || n != 3) {
      throw MeshError(path + ":" + std::to_string(lineno) +
                      ": expected triangular face '3 i j k', got '" + line + "'");
    }
    faces.push_back({a, b, c});
  }

  return SurfaceMesh(std::move(verts), std::move(faces));
}

void save_mesh(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot open file for writing: " + path);
  out.precision(17);
  out << "OFF\n"
      << mesh.num_vertices() << ' ' << mesh.num_triangles() << ' ' << mesh.num_edges()
      << '\n';
  for (const auto& v : mesh.vertices()) {
    out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const auto& t : mesh.triangles()) {
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  if (!out) throw MeshError("failed writing OFF file: " + path);
}

}  // namespace mxbem
