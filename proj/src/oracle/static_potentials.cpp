// SPDX-License-Identifier: Apache-2.0

#include "mxbem/oracle/static_potentials.hpp"

#include <cmath>

namespace mxbem::oracle {

StaticTriangleIntegrals static_triangle_integrals(const std::array<Vec3, 3>& tri,
                                                  const Vec3& x) {
  StaticTriangleIntegrals out;
  const Vec3 n = (tri[1] - tri[0]).cross(tri[2] - tri[0]).normalized();
  const double w0 = (x - tri[0]).dot(n);
  const Vec3 rho = x - w0 * n;
  out.w0 = w0;
  out.rho = rho;
  out.normal = n;

  double beta_sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec3 A = tri[i];
    const Vec3 B = tri[(i + 1) % 3];
    const Vec3 edge = B - A;
    const double len = edge.norm();
    const Vec3 shat = edge / len;
    const Vec3 mhat = shat.cross(n);  // in-plane outward edge normal
    const double t0 = (A - rho).dot(mhat);
    const double sm = (A - rho).dot(shat);
    const double sp = (B - rho).dot(shat);
    const double R02 = t0 * t0 + w0 * w0;
    const double Rm = std::sqrt(R02 + sm * sm);
    const double Rp = std::sqrt(R02 + sp * sp);

    // Stable branch of log((Rp+sp)/(Rm+sm)).
    double f2;
    if (sm >= 0.0) {
      f2 = std::log((Rp + sp) / (Rm + sm));
    } else if (sp <= 0.0) {
      f2 = std::log((Rm - sm) / (Rp - sp));
    } else {
      f2 = std::log((Rp + sp) * (Rm - sm) / R02);
    }

    const double aw = std::abs(w0);
    const double beta_i = std::atan(t0 * sp / (R02 + aw * Rp)) -
                          std::atan(t0 * sm / (R02 + aw * Rm));

    out.I1 += t0 * f2;
    out.Irho += 0.5 * mhat * (sp * Rp - sm * Rm + R02 * f2);
    out.K1 -= mhat * f2;
    beta_sum += beta_i;
  }
  out.I1 -= std::abs(w0) * beta_sum;
  out.w0K0 = (w0 >= 0.0 ? beta_sum : -beta_sum);
  return out;
}

}  // namespace mxbem::oracle
