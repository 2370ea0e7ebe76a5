// SPDX-License-Identifier: Apache-2.0

#include "mxbem/geometry/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <utility>

namespace mxbem {

namespace {
std::atomic<std::uint64_t> g_next_mesh_id{1};
}

SurfaceMesh::SurfaceMesh(std::vector<Vec3> vertices,
                         std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = num_vertices();
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = triangles_[t][k];
      if (v < 0 || v >= nv) {
        throw MeshError("triangle " + std::to_string(t) + " references invalid vertex " +
                        std::to_string(v));
      }
    }
  }

  areas_.resize(triangles_.size());
  normals_.resize(triangles_.size());
  centroids_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const Vec3& a = vertices_[triangles_[t][0]];
    const Vec3& b = vertices_[triangles_[t][1]];
    const Vec3& c = vertices_[triangles_[t][2]];
    const Vec3 cr = (b - a).cross(c - a);
    const double two_area = cr.norm();
    if (!(two_area > 0.0) || !std::isfinite(two_area)) {
      throw MeshError("triangle " + std::to_string(t) + " is degenerate (zero area)");
    }
    areas_[t] = 0.5 * two_area;
    normals_[t] = cr / two_area;
    centroids_[t] = (a + b + c) / 3.0;
  }

  build_edges();
  validate();
  id_ = g_next_mesh_id.fetch_add(1);
}

void SurfaceMesh::build_edges() {
  // Directed edge occurrences, keyed by sorted vertex pair. The value
  // records (triangle, traverses key in ascending order?).
  std::map<std::pair<int, int>, std::vector<std::pair<int, bool>>> occ;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = triangles_[t][k];
      const int b = triangles_[t][(k + 1) % 3];
      const bool ascending = a < b;
      occ[{std::min(a, b), std::max(a, b)}].emplace_back(static_cast<int>(t), ascending);
    }
  }

  edges_.reserve(occ.size());
  std::map<std::pair<int, int>, int> edge_index;
  for (const auto& [key, tris] : occ) {
    if (tris.size() != 2) {
      throw MeshError("edge (" + std::to_string(key.first) + "," +
                      std::to_string(key.second) + ") shared by " +
                      std::to_string(tris.size()) + " triangle(s); mesh is not watertight");
    }
    if (tris[0].second == tris[1].second) {
      throw MeshError("inconsistent orientation at edge " +
                      std::to_string(edges_.size()) + " (" + std::to_string(key.first) +
                      "," + std::to_string(key.second) + ")");
    }
    MeshEdge e;
    e.v0 = key.first;
    e.v1 = key.second;
    e.tri_plus = std::min(tris[0].first, tris[1].first);
    e.tri_minus = std::max(tris[0].first, tris[1].first);
    e.length = (vertices_[e.v1] - vertices_[e.v0]).norm();
    auto opposite = [&](int t) {
      for (int k = 0; k < 3; ++k) {
        const int v = triangles_[t][k];
        if (v != e.v0 && v != e.v1) return v;
      }
      throw MeshError("edge endpoints coincide in triangle " + std::to_string(t));
    };
    e.opp_plus = opposite(e.tri_plus);
    e.opp_minus = opposite(e.tri_minus);
    edge_index[key] = static_cast<int>(edges_.size());
    edges_.push_back(e);
  }

  tri_edges_.assign(triangles_.size(), {-1, -1, -1});
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = triangles_[t][k];
      const int b = triangles_[t][(k + 1) % 3];
      tri_edges_[t][k] = edge_index.at({std::min(a, b), std::max(a, b)});
    }
  }
}

void SurfaceMesh::validate() const {
  // Watertightness and orientation were enforced during edge build.
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    if (!(areas_[t] > 0.0)) {
      throw MeshError("triangle " + std::to_string(t) + " has non-positive area");
    }
  }
}

int SurfaceMesh::local_index(int t, int v) const {
  for (int k = 0; k < 3; ++k) {
    if (triangles_[t][k] == v) return k;
  }
  throw MeshError("vertex " + std::to_string(v) + " not in triangle " + std::to_string(t));
}

int SurfaceMesh::shared_vertex_count(int a, int b) const {
  int count = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (triangles_[a][i] == triangles_[b][j]) ++count;
    }
  }
  return count;
}

double SurfaceMesh::h(int t) const {
  double hmax = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Vec3 d = triangle_vertex(t, (k + 1) % 3) - triangle_vertex(t, k);
    hmax = std::max(hmax, d.norm());
  }
  return hmax;
}

MeshStats SurfaceMesh::stats() const {
  MeshStats s;
  s.h_min = std::numeric_limits<double>::infinity();
  for (int t = 0; t < num_triangles(); ++t) {
    double perimeter = 0.0;
    double ht = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double l =
          (triangle_vertex(t, (k + 1) % 3) - triangle_vertex(t, k)).norm();
      perimeter += l;
      ht = std::max(ht, l);
    }
    const double inradius = 2.0 * areas_[t] / perimeter;
    s.h_max = std::max(s.h_max, ht);
    s.h_min = std::min(s.h_min, ht);
    s.total_area += areas_[t];
    s.shape_regularity = std::max(s.shape_regularity, ht / inradius);
  }
  return s;
}

double solid_angle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ra = a - p, rb = b - p, rc = c - p;
  const double la = ra.norm(), lb = rb.norm(), lc = rc.norm();
  const double num = ra.dot(rb.cross(rc));
  const double den =
      la * lb * lc + ra.dot(rb) * lc + rb.dot(rc) * la + rc.dot(ra) * lb;
  return 2.0 * std::atan2(num, den);
}

bool SurfaceMesh::contains(const Vec3& p) const {
  double omega = 0.0;
  for (int t = 0; t < num_triangles(); ++t) {
    omega += solid_angle(p, triangle_vertex(t, 0), triangle_vertex(t, 1),
                         triangle_vertex(t, 2));
  }
  return omega > 2.0 * kPi;  // ~4*pi inside, ~0 outside
}

}  // namespace mxbem
