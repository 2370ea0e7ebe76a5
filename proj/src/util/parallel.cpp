// SPDX-License-Identifier: Apache-2.0

#include "mxbem/util/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace mxbem {

namespace {
std::atomic<int> g_threads{0};  // 0 = hardware concurrency
}

int default_threads() {
  const int t = g_threads.load(std::memory_order_relaxed);
  if (t > 0) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_default_threads(int n) { g_threads.store(n, std::memory_order_relaxed); }

void parallel_for_blocked(std::size_t n, int threads,
                          const std::function<void(std::size_t, std::size_t)>& fn) {
  if (threads <= 0) threads = default_threads();
  const std::size_t nt = std::min<std::size_t>(threads, n > 0 ? n : 1);
  if (nt <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t block = (n + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t b = t * block;
    const std::size_t e = std::min(n, b + block);
    if (b >= e) break;
    pool.emplace_back([&, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace mxbem
