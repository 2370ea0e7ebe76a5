// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_KERNELS_YUKAWA_HPP
#define MXBEM_KERNELS_YUKAWA_HPP

#include <cstddef>

#include "mxbem/core/types.hpp"

namespace mxbem {

/// Fundamental solution of the Yukawa operator, G(x,y;s) = e^{-s r}/(4 pi r)
/// with r = |x-y|. Decays for Re s > 0.
inline Complex yukawa_kernel(const Vec3& x, const Vec3& y, Complex shat) {
  const double r = (x - y).norm();
  if (!(r > 0.0)) throw MxError("yukawa_kernel: coincident points");
  return std::exp(-shat * r) / (4.0 * kPi * r);
}

/// Radial derivative factors of G at distance r:
///   grad_x G = f1 * (x - y),          f1 = G'(r)/r
///   Hess_x G = f1*I + f2*(x-y)(x-y)^T, f2 = (G''(r) r - G'(r))/r^3
struct YukawaDerivs {
  Complex g, f1, f2;
};

inline YukawaDerivs yukawa_derivs(double r, Complex shat) {
  const Complex u = shat * r;
  const Complex g = std::exp(-u) / (4.0 * kPi * r);
  YukawaDerivs d;
  d.g = g;
  d.f1 = -(1.0 + u) * g / (r * r);
  d.f2 = (u * u + 3.0 * u + 3.0) * g / (r * r * r * r);
  return d;
}

// ---------------------------------------------------------------------------
// Batched kernel evaluation: the hot inner loop of Galerkin assembly.
// For each point k with displacement d_k = (dx,dy,dz)_k and weight w_k:
//   g[k] = w_k * exp(-shat*r)/(4 pi r)
//   f[k] = w_k * G'(r)/r = -w_k (1 + shat r) exp(-shat r)/(4 pi r^3)
// A scalar reference implementation and an AVX2 variant are provided; the
// active one is selected at runtime (cpuid, overridable for testing).
// ---------------------------------------------------------------------------

using GfBatchFn = void (*)(Complex shat, const double* dx, const double* dy,
                           const double* dz, const double* w, std::size_t n,
                           Complex* g, Complex* f);

void yukawa_gf_batch_scalar(Complex shat, const double* dx, const double* dy,
                            const double* dz, const double* w, std::size_t n,
                            Complex* g, Complex* f);

#if defined(__x86_64__) || defined(_M_X64)
void yukawa_gf_batch_avx2(Complex shat, const double* dx, const double* dy,
                          const double* dz, const double* w, std::size_t n,
                          Complex* g, Complex* f);
#endif

enum class SimdLevel { scalar, avx2 };

bool cpu_has_avx2();

/// Active level: cpuid-detected at first use; the MXBEM_SIMD environment
/// variable ("scalar"/"avx2") or set_simd_level() override it.
SimdLevel active_simd_level();
void set_simd_level(SimdLevel level);

GfBatchFn yukawa_gf_batch_fn();

inline void yukawa_gf_batch(Complex shat, const double* dx, const double* dy,
                            const double* dz, const double* w, std::size_t n,
                            Complex* g, Complex* f) {
  yukawa_gf_batch_fn()(shat, dx, dy, dz, w, n, g, f);
}

}  // namespace mxbem

#endif
