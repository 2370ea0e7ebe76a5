// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_GEOMETRY_MESH_HPP
#define MXBEM_GEOMETRY_MESH_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "mxbem/core/types.hpp"

namespace mxbem {

struct MeshError : MxError {
  using MxError::MxError;
};

/// Edge of a watertight triangulation. Edges are keyed by their sorted
/// vertex pair (v0 < v1); the adjacent triangle with the lower index is
/// "plus", the other "minus". RWG sign conventions reference this.
struct MeshEdge {
  int v0 = -1, v1 = -1;        // endpoint vertex indices, v0 < v1
  int tri_plus = -1;           // lower adjacent triangle index
  int tri_minus = -1;          // higher adjacent triangle index
  int opp_plus = -1;           // vertex of tri_plus opposite this edge
  int opp_minus = -1;          // vertex of tri_minus opposite this edge
  double length = 0.0;
};

struct MeshStats {
  double h_max = 0.0;
  double h_min = 0.0;
  double total_area = 0.0;
  double shape_regularity = 0.0;  // max over triangles of h_T / inradius_T
};

/// Closed oriented triangulated surface separating the interior domain
/// from the exterior. Triangles wind counter-clockwise as seen from the
/// exterior, so flat-panel normals point outward. Immutable after
/// construction; concurrent reads are safe.
class SurfaceMesh {
 public:
  SurfaceMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int euler_characteristic() const {
    return num_vertices() - num_edges() + num_triangles();
  }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }

  const Vec3& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const MeshEdge& edge(int e) const { return edges_[e]; }

  double area(int t) const { return areas_[t]; }
  const Vec3& normal(int t) const { return normals_[t]; }
  const Vec3& centroid(int t) const { return centroids_[t]; }

  Vec3 triangle_vertex(int t, int corner) const {
    return vertices_[triangles_[t][corner]];
  }

  /// Local index (0..2) of vertex v within triangle t; throws if absent.
  int local_index(int t, int v) const;

  /// Edges of triangle t (in no particular order).
  const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[t]; }

  /// Number of vertices shared by triangles a and b (0..3).
  int shared_vertex_count(int a, int b) const;

  MeshStats stats() const;

  /// Longest edge of triangle t.
  double h(int t) const;

  /// Generalized winding number test: true if p lies inside the closed
  /// surface. Points very close to the surface are unreliable.
  bool contains(const Vec3& p) const;

  /// Monotonically increasing id, unique per constructed mesh in this
  /// process. Used as a cache key by operator assembly.
  std::uint64_t id() const { return id_; }

 private:
  void build_edges();
  void validate() const;

  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<double> areas_;
  std::vector<Vec3> normals_;
  std::vector<Vec3> centroids_;
  std::uint64_t id_ = 0;
};

/// Icosphere: subdivided icosahedron with vertices projected onto the
/// sphere. level <= 6. Counts: V = 2 + 10*4^L, E = 30*4^L, F = 20*4^L.
SurfaceMesh make_icosphere(int level, double radius, const Vec3& center);

/// Signed solid angle of triangle (a,b,c) seen from p (Van Oosterom-Strackee).
double solid_angle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

}  // namespace mxbem

#endif
