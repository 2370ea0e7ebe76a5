// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_ORACLE_ADAPTIVE_QUAD_HPP
#define MXBEM_ORACLE_ADAPTIVE_QUAD_HPP

#include <array>
#include <functional>

#include "mxbem/core/types.hpp"

namespace mxbem::oracle {

/// Adaptive integration over a flat triangle: recursive midpoint
/// subdivision with an embedded low/high order error estimate per cell.
/// Tolerance is absolute and distributed by area fraction.
Complex integrate_triangle_adaptive(const std::array<Vec3, 3>& tri,
                                    const std::function<Complex(const Vec3&)>& f,
                                    double tol, int max_depth = 28);

/// Adaptive double-surface integration over a panel pair, subdividing the
/// larger panel of a cell pair. Independent of the regularizing-transform
/// quadrature this library uses for assembly.
Complex integrate_pair_adaptive(const std::array<Vec3, 3>& tri_a,
                                const std::array<Vec3, 3>& tri_b,
                                const std::function<Complex(const Vec3&, const Vec3&)>& f,
                                double tol, int max_depth = 40);

/// Vector-valued variants: all components share one adaptive tree, with
/// the l1 norm of the component errors driving refinement.
using MultiPointFn = std::function<void(const Vec3&, Complex*)>;
using MultiPairFn = std::function<void(const Vec3&, const Vec3&, Complex*)>;

void integrate_triangle_adaptive_multi(const std::array<Vec3, 3>& tri,
                                       const MultiPointFn& f, int n_out,
                                       Complex* out, double tol,
                                       int max_depth = 28);

void integrate_pair_adaptive_multi(const std::array<Vec3, 3>& tri_a,
                                   const std::array<Vec3, 3>& tri_b,
                                   const MultiPairFn& f, int n_out, Complex* out,
                                   double tol, int max_depth = 40);

}  // namespace mxbem::oracle

#endif
