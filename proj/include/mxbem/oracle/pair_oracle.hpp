// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_ORACLE_PAIR_ORACLE_HPP
#define MXBEM_ORACLE_PAIR_ORACLE_HPP

#include "mxbem/core/types.hpp"
#include "mxbem/operators/tags.hpp"
#include "mxbem/spaces/trace_spaces.hpp"

namespace mxbem::oracle {

/// Reference value of int_A int_B G(x,y;shat) dy dx by adaptive
/// subdivision; touching pairs use singularity subtraction with the
/// analytic static integrals.
Complex yukawa_pair_oracle(const std::array<Vec3, 3>& tri_a,
                           const std::array<Vec3, 3>& tri_b, Complex shat,
                           double tol_abs);

/// Reference Galerkin contribution of the ordered panel pair (ta, tb) to
/// entry (edge_i, edge_j) of the tagged operator matrix. Independent of
/// the regularizing-transform assembly path.
Complex galerkin_pair_entry_oracle(const DivSpace& X, OperatorTag tag, Complex shat,
                                   int ta, int tb, int edge_i, int edge_j,
                                   double tol_abs);

/// Full reference matrix (expensive; meant for small meshes).
CMatrix galerkin_matrix_oracle(const DivSpace& X, OperatorTag tag, Complex shat,
                               double tol_abs);

}  // namespace mxbem::oracle

#endif
