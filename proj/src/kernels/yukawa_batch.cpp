// SPDX-License-Identifier: Apache-2.0

#include "mxbem/kernels/yukawa.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace mxbem {

void yukawa_gf_batch_scalar(Complex shat, const double* dx, const double* dy,
                            const double* dz, const double* w, std::size_t n,
                            Complex* g, Complex* f) {
  const double sr = shat.real();
  const double si = shat.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double r2 = dx[k] * dx[k] + dy[k] * dy[k] + dz[k] * dz[k];
    const double r = std::sqrt(r2);
    const double amp = std::exp(-sr * r) / (4.0 * kPi * r) * w[k];
    const double phase = si * r;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const Complex gk(amp * c, -amp * s);
    g[k] = gk;
    // -(1 + shat r) g / r^2
    const Complex one_plus_u(1.0 + sr * r, si * r);
    f[k] = -one_plus_u * gk / r2;
  }
}

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

SimdLevel detect_level() {
  if (const char* env = std::getenv("MXBEM_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return SimdLevel::scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return SimdLevel::avx2;
  }
  return cpu_has_avx2() ? SimdLevel::avx2 : SimdLevel::scalar;
}

std::atomic<int> g_level{-1};

}  // namespace

SimdLevel active_simd_level() {
  int v = g_level.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(detect_level());
    g_level.store(v, std::memory_order_relaxed);
  }
  return static_cast<SimdLevel>(v);
}

void set_simd_level(SimdLevel level) {
  if (level == SimdLevel::avx2 && !cpu_has_avx2()) {
    throw MxError("set_simd_level: AVX2 not supported on this CPU");
  }
  g_level.store(static_cast<int>(level), std::memory_order_relaxed);
}

GfBatchFn yukawa_gf_batch_fn() {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_simd_level() == SimdLevel::avx2) return &yukawa_gf_batch_avx2;
#endif
  return &yukawa_gf_batch_scalar;
}

}  // namespace mxbem
