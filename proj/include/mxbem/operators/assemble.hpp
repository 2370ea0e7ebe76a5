// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_OPERATORS_ASSEMBLE_HPP
#define MXBEM_OPERATORS_ASSEMBLE_HPP

#include <memory>

#include "mxbem/core/types.hpp"
#include "mxbem/operators/tags.hpp"
#include "mxbem/quadrature/pair_rules.hpp"
#include "mxbem/spaces/trace_spaces.hpp"

namespace mxbem {

/// The four Galerkin matrices at one wavenumber shat = s/c; see
/// OperatorTag for the entry conventions. Immutable once assembled.
struct OperatorSet {
  CMatrix V, K, Ktilde, Vtilde;
  Complex shat;
  std::uint64_t mesh_id = 0;
};

/// Assembles (or fetches from the process-wide cache) the operator set at
/// the given wavenumber. Deterministic: repeated calls yield bit-identical
/// matrices regardless of thread count. Re(owning s) > 0 is the caller's
/// contract; shat itself may be anywhere in Re > 0 after scaling by c.
std::shared_ptr<const OperatorSet> assemble_operators(const DivSpace& X, Complex shat,
                                                      const QuadConfig& quad,
                                                      int threads = 0);

/// Single tagged matrix (thin wrapper over the cached set).
CMatrix assemble_operator(const DivSpace& X, OperatorTag tag, Complex shat,
                          const QuadConfig& quad);

void clear_operator_cache();
std::size_t operator_cache_size();

}  // namespace mxbem

#endif
