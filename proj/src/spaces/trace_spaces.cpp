// SPDX-License-Identifier: Apache-2.0

#include "mxbem/spaces/trace_spaces.hpp"

#include <utility>

#include "mxbem/quadrature/gauss.hpp"

namespace mxbem {

DivSpace::DivSpace(std::shared_ptr<const SurfaceMesh> mesh) : mesh_(std::move(mesh)) {
  if (!mesh_) throw MxError("DivSpace: null mesh");
}

double DivSpace::sign(int e, int t) const {
  const MeshEdge& edge = mesh_->edge(e);
  if (t == edge.tri_plus) return 1.0;
  if (t == edge.tri_minus) return -1.0;
  throw MxError("DivSpace: triangle " + std::to_string(t) + " not adjacent to edge " +
                std::to_string(e));
}

Vec3 DivSpace::basis(int e, int t, const Vec3& x) const {
  const MeshEdge& edge = mesh_->edge(e);
  const int opp = (t == edge.tri_plus) ? edge.opp_plus : edge.opp_minus;
  const double s = sign(e, t);
  return s * edge.length / (2.0 * mesh_->area(t)) * (x - mesh_->vertex(opp));
}

double DivSpace::basis_div(int e, int t) const {
  const MeshEdge& edge = mesh_->edge(e);
  return sign(e, t) * edge.length / mesh_->area(t);
}

Vec3 DivSpace::eval_real(const Vector& coef, int t, const Vec3& x) const {
  Vec3 out = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    const int e = mesh_->triangle_edges(t)[k];
    out += coef[e] * basis(e, t, x);
  }
  return out;
}

CVec3 DivSpace::eval(const CVector& coef, int t, const Vec3& x) const {
  CVec3 out = CVec3::Zero();
  for (int k = 0; k < 3; ++k) {
    const int e = mesh_->triangle_edges(t)[k];
    out += coef[e] * basis(e, t, x).cast<Complex>();
  }
  return out;
}

CVec3 CurlSpace::eval(const CVector& coef, int t, const Vec3& x) const {
  CVec3 out = CVec3::Zero();
  for (int k = 0; k < 3; ++k) {
    const int e = mesh().triangle_edges(t)[k];
    out += coef[e] * basis(e, t, x).cast<Complex>();
  }
  return out;
}

Matrix duality_gram(const DivSpace& X, const CurlSpace& Y) {
  if (X.mesh().id() != Y.mesh().id()) {
    throw MxError("duality_gram: spaces built on different meshes");
  }
  const SurfaceMesh& mesh = X.mesh();
  const int dim = X.dimension();
  Matrix P = Matrix::Zero(dim, dim);
  const auto rule = triangle_rule(2);  // integrand is quadratic per panel
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 v0 = mesh.triangle_vertex(t, 0);
    const Vec3 v1 = mesh.triangle_vertex(t, 1);
    const Vec3 v2 = mesh.triangle_vertex(t, 2);
    const double jac = 2.0 * mesh.area(t);
    for (const auto& qp : rule) {
      const Vec3 x = map_triangle(v0, v1, v2, qp.x1, qp.x2);
      const double w = qp.w * jac;
      for (int a = 0; a < 3; ++a) {
        const int i = mesh.triangle_edges(t)[a];
        const Vec3 fi = X.basis(i, t, x);
        for (int b = 0; b < 3; ++b) {
          const int j = mesh.triangle_edges(t)[b];
          P(i, j) += w * fi.dot(Y.basis(j, t, x));
        }
      }
    }
  }
  return P;
}

Matrix mass_matrix(const DivSpace& X) {
  const SurfaceMesh& mesh = X.mesh();
  const int dim = X.dimension();
  Matrix M = Matrix::Zero(dim, dim);
  const auto rule = triangle_rule(2);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 v0 = mesh.triangle_vertex(t, 0);
    const Vec3 v1 = mesh.triangle_vertex(t, 1);
    const Vec3 v2 = mesh.triangle_vertex(t, 2);
    const double jac = 2.0 * mesh.area(t);
    for (const auto& qp : rule) {
      const Vec3 x = map_triangle(v0, v1, v2, qp.x1, qp.x2);
      const double w = qp.w * jac;
      for (int a = 0; a < 3; ++a) {
        const int i = mesh.triangle_edges(t)[a];
        const Vec3 fi = X.basis(i, t, x);
        for (int b = 0; b < 3; ++b) {
          const int j = mesh.triangle_edges(t)[b];
          M(i, j) += w * fi.dot(X.basis(j, t, x));
        }
      }
    }
  }
  return M;
}

namespace {

template <typename Space>
CVector project_impl(const Space& space,
                     const std::function<CVec3(const Vec3&, int)>& field, int degree) {
  const SurfaceMesh& mesh = space.mesh();
  CVector b = CVector::Zero(space.dimension());
  const auto rule = triangle_rule(degree);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 v0 = mesh.triangle_vertex(t, 0);
    const Vec3 v1 = mesh.triangle_vertex(t, 1);
    const Vec3 v2 = mesh.triangle_vertex(t, 2);
    const double jac = 2.0 * mesh.area(t);
    for (const auto& qp : rule) {
      const Vec3 x = map_triangle(v0, v1, v2, qp.x1, qp.x2);
      const CVec3 val = field(x, t);
      const double w = qp.w * jac;
      for (int a = 0; a < 3; ++a) {
        const int e = mesh.triangle_edges(t)[a];
        b[e] += w * bdot(val, space.basis(e, t, x));
      }
    }
  }
  return b;
}

}  // namespace

CVector project_onto_dual(const DivSpace& X,
                          const std::function<CVec3(const Vec3&, int)>& field,
                          int degree) {
  return project_impl(X, field, degree);
}

CVector project_onto_dual(const CurlSpace& Y,
                          const std::function<CVec3(const Vec3&, int)>& field,
                          int degree) {
  return project_impl(Y, field, degree);
}

}  // namespace mxbem
