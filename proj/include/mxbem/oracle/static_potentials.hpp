// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_ORACLE_STATIC_POTENTIALS_HPP
#define MXBEM_ORACLE_STATIC_POTENTIALS_HPP

#include <array>

#include "mxbem/core/types.hpp"

namespace mxbem::oracle {

/// Closed-form integrals of the static kernel over a flat triangle T with
/// observation point x (classical per-edge log/arctangent reductions):
///   I1     = int_T 1/R dA
///   Irho   = int_T (y - rho)/R dA           (in-plane vector)
///   K1     = int_T (y - rho)/R^3 dA         (in-plane vector)
///   w0K0   = w0 * int_T 1/R^3 dA = sign(w0) * beta   (finite as w0 -> 0)
/// where R = |x - y|, w0 = (x - v0).n is the signed height of x over the
/// triangle plane and rho = x - w0 n its in-plane projection.
struct StaticTriangleIntegrals {
  double I1 = 0.0;
  Vec3 Irho = Vec3::Zero();
  Vec3 K1 = Vec3::Zero();
  double w0K0 = 0.0;
  double w0 = 0.0;
  Vec3 rho = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
};

StaticTriangleIntegrals static_triangle_integrals(const std::array<Vec3, 3>& tri,
                                                  const Vec3& x);

}  // namespace mxbem::oracle

#endif
