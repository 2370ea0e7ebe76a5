// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_QUADRATURE_GAUSS_HPP
#define MXBEM_QUADRATURE_GAUSS_HPP

#include <vector>

#include "mxbem/core/types.hpp"

namespace mxbem {

struct Gauss1D {
  std::vector<double> x;  // nodes on [0,1]
  std::vector<double> w;  // weights, sum to 1
};

/// n-point Gauss-Legendre rule mapped to [0,1]; exact for degree 2n-1.
const Gauss1D& gauss_legendre_01(int n);

/// Quadrature point on the reference triangle {0 <= x2 <= x1 <= 1}.
struct TriPoint {
  double x1, x2, w;
};

/// Tensor rule on the reference triangle via the collapsed map
/// (u,v) -> (u, u v). Integrates bivariate polynomials of total degree
/// <= `degree` exactly. Weights sum to 1/2.
std::vector<TriPoint> triangle_rule(int degree);

/// Map reference coordinates to the physical triangle (v0,v1,v2):
/// x = v0 + x1 (v1 - v0) + x2 (v2 - v1). Surface measure dS = 2A dx1 dx2.
inline Vec3 map_triangle(const Vec3& v0, const Vec3& v1, const Vec3& v2, double x1,
                         double x2) {
  return v0 + x1 * (v1 - v0) + x2 * (v2 - v1);
}

}  // namespace mxbem

#endif
