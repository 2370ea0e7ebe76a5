// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>

#include "mxbem/geometry/mesh.hpp"

namespace mxbem {

SurfaceMesh make_icosphere(int level, double radius, const Vec3& center) {
  if (level < 0 || level > 6) {
    throw MeshError("icosphere level must be in [0,6], got " + std::to_string(level));
  }
  if (!(radius > 0.0)) {
    throw MeshError("icosphere radius must be positive");
  }

  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec3> verts = {
      {-1, phi, 0},  {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi},  {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1},
  };
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},  {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},  {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},  {9, 8, 1},
  };
  for (auto& v : verts) v.normalize();

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 m = (verts[a] + verts[b]).normalized();
      verts.push_back(m);
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  for (auto& v : verts) v = center + radius * v;
  SurfaceMesh mesh(std::move(verts), std::move(faces));

  // Outward orientation sanity check against the sphere center.
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if ((mesh.centroid(t) - center).dot(mesh.normal(t)) <= 0.0) {
      throw MeshError("icosphere produced inward-facing triangle " + std::to_string(t));
    }
  }
  return mesh;
}

}  // namespace mxbem
