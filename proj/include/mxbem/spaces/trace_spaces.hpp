// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_SPACES_TRACE_SPACES_HPP
#define MXBEM_SPACES_TRACE_SPACES_HPP

#include <functional>
#include <memory>
#include <vector>

#include "mxbem/core/types.hpp"
#include "mxbem/geometry/mesh.hpp"

namespace mxbem {

/// Div-conforming RWG space, one degree of freedom per edge. On the two
/// triangles T+- adjacent to edge e the basis function is
///   f_e(x) = +- l_e / (2 |T+-|) (x - p+-),
/// p+- the vertex opposite e, sign + on the lower-index triangle. The
/// normal component across e is continuous (flux l_e from T+ into T-).
class DivSpace {
 public:
  explicit DivSpace(std::shared_ptr<const SurfaceMesh> mesh);

  int dimension() const { return mesh_->num_edges(); }
  const SurfaceMesh& mesh() const { return *mesh_; }
  std::shared_ptr<const SurfaceMesh> mesh_ptr() const { return mesh_; }

  /// +1 if t is the plus triangle of edge e, -1 if minus; throws otherwise.
  double sign(int e, int t) const;

  /// Basis function of edge e restricted to triangle t at physical point x.
  Vec3 basis(int e, int t, const Vec3& x) const;

  /// Surface divergence of the basis on triangle t (constant per panel).
  double basis_div(int e, int t) const;

  /// Evaluate the field with given coefficients at x on triangle t.
  Vec3 eval_real(const Vector& coef, int t, const Vec3& x) const;
  CVec3 eval(const CVector& coef, int t, const Vec3& x) const;

 private:
  std::shared_ptr<const SurfaceMesh> mesh_;
};

/// Curl-conforming rotated-RWG space: g_e = n x f_e panel-wise.
class CurlSpace {
 public:
  explicit CurlSpace(std::shared_ptr<const SurfaceMesh> mesh)
      : div_(std::move(mesh)) {}

  int dimension() const { return div_.dimension(); }
  const SurfaceMesh& mesh() const { return div_.mesh(); }
  std::shared_ptr<const SurfaceMesh> mesh_ptr() const { return div_.mesh_ptr(); }
  const DivSpace& underlying_div() const { return div_; }

  Vec3 basis(int e, int t, const Vec3& x) const {
    return mesh().normal(t).cross(div_.basis(e, t, x));
  }

  CVec3 eval(const CVector& coef, int t, const Vec3& x) const;

 private:
  DivSpace div_;
};

/// Duality pairing matrix P[i][j] = int_Gamma f_i . g_j dS. Real,
/// skew-symmetric, assembled with polynomial-exact panel rules.
Matrix duality_gram(const DivSpace& X, const CurlSpace& Y);

/// L2 Gram M[i][j] = int f_i . f_j dS (identical for the rotated basis).
Matrix mass_matrix(const DivSpace& X);

/// Dual-functional vector b[i] = int_Gamma field . basis_i dS, assembled
/// with a per-panel rule of the given polynomial degree.
CVector project_onto_dual(const DivSpace& X,
                          const std::function<CVec3(const Vec3&, int)>& field,
                          int degree = 6);
CVector project_onto_dual(const CurlSpace& Y,
                          const std::function<CVec3(const Vec3&, int)>& field,
                          int degree = 6);

}  // namespace mxbem

#endif
