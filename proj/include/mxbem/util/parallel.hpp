// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_UTIL_PARALLEL_HPP
#define MXBEM_UTIL_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace mxbem {

/// Process-wide default worker count (set from the CLI --threads flag).
int default_threads();
void set_default_threads(int n);

/// Runs fn(begin, end) over a blocked partition of [0, n) on `threads`
/// workers. Caller is responsible for writing to disjoint slots; results
/// must then be reduced in a fixed order for determinism.
void parallel_for_blocked(std::size_t n, int threads,
                          const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace mxbem

#endif
