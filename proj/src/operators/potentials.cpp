// SPDX-License-Identifier: Apache-2.0

#include "mxbem/operators/potentials.hpp"

#include <cmath>

#include "mxbem/kernels/yukawa.hpp"
#include "mxbem/oracle/adaptive_quad.hpp"
#include "mxbem/quadrature/gauss.hpp"

namespace mxbem {

namespace {

double point_triangle_distance(const Vec3& x, const Vec3& a, const Vec3& b,
                               const Vec3& c) {
  // Projection onto the plane clamped to the triangle via barycentric tests;
  // falls back to edge distances.
  const Vec3 ab = b - a, ac = c - a, ap = x - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return (x - a).norm();
  const Vec3 bp = x - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return (x - b).norm();
  const Vec3 cp = x - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return (x - c).norm();
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    const double v = d1 / (d1 - d3);
    return (x - (a + v * ab)).norm();
  }
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    const double w = d2 / (d2 - d6);
    return (x - (a + w * ac)).norm();
  }
  const double va = d3 * d6 - d4 * d5;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return (x - (b + w * (c - b))).norm();
  }
  const double denom = 1.0 / (vc + vb + va);
  const double v = vb * denom, w = vc * denom;
  return (x - (a + ab * v + ac * w)).norm();
}

}  // namespace

void PotentialEvaluator::eval_DS(const CVector& fcoef, Complex shat, const Vec3& x,
                                 CVec3* D, CVec3* S) const {
  const SurfaceMesh& mesh = X_->mesh();
  CVec3 accD = CVec3::Zero();
  CVec3 accS = CVec3::Zero();
  const auto rule = triangle_rule(degree_);
  const Complex s2 = shat * shat;

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec3 v0 = mesh.triangle_vertex(t, 0);
    const Vec3 v1 = mesh.triangle_vertex(t, 1);
    const Vec3 v2 = mesh.triangle_vertex(t, 2);

    auto integrand = [&](const Vec3& y, Complex* out) {
      CVec3 f = X_->eval(fcoef, t, y);
      const Vec3 d = x - y;
      const double r = d.norm();
      const auto kd = yukawa_derivs(r, shat);
      const CVec3 dc = d.cast<Complex>();
      const CVec3 Dv = kd.f1 * dc.cross(f);
      const CVec3 Sv = kd.f1 * f + kd.f2 * bdot(dc, f) * dc - s2 * kd.g * f;
      out[0] = Dv.x(); out[1] = Dv.y(); out[2] = Dv.z();
      out[3] = Sv.x(); out[4] = Sv.y(); out[5] = Sv.z();
    };

    const bool near =
        near_adaptive_ &&
        point_triangle_distance(x, v0, v1, v2) < near_factor_ * mesh.h(t);
    Complex vals[6];
    if (near) {
      std::array<Vec3, 3> tri{v0, v1, v2};
      oracle::integrate_triangle_adaptive_multi(tri, integrand, 6, vals, near_tol_);
    } else {
      for (int k = 0; k < 6; ++k) vals[k] = Complex(0, 0);
      const double jac = 2.0 * mesh.area(t);
      Complex buf[6];
      for (const auto& qp : rule) {
        integrand(map_triangle(v0, v1, v2, qp.x1, qp.x2), buf);
        for (int k = 0; k < 6; ++k) vals[k] += jac * qp.w * buf[k];
      }
    }
    accD += CVec3(vals[0], vals[1], vals[2]);
    accS += CVec3(vals[3], vals[4], vals[5]);
  }
  if (D) *D = accD;
  if (S) *S = accS;
}

CVec3 PotentialEvaluator::eval_D(const CVector& fcoef, Complex shat,
                                 const Vec3& x) const {
  CVec3 D;
  eval_DS(fcoef, shat, x, &D, nullptr);
  return D;
}

CVec3 PotentialEvaluator::eval_S(const CVector& fcoef, Complex shat,
                                 const Vec3& x) const {
  CVec3 S;
  eval_DS(fcoef, shat, x, nullptr, &S);
  return S;
}

double PotentialEvaluator::surface_distance(const Vec3& x) const {
  const SurfaceMesh& mesh = X_->mesh();
  double d = std::numeric_limits<double>::infinity();
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    d = std::min(d, point_triangle_distance(x, mesh.triangle_vertex(t, 0),
                                            mesh.triangle_vertex(t, 1),
                                            mesh.triangle_vertex(t, 2)));
  }
  return d;
}

}  // namespace mxbem
