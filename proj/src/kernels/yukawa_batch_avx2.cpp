// SPDX-License-Identifier: Apache-2.0

// AVX2 variant of the batched Yukawa kernel. This translation unit is the
// only one compiled with -mavx2/-mfma; callers reach it through the runtime
// dispatcher in yukawa_batch.cpp.

#include "mxbem/kernels/yukawa.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace mxbem {

namespace {

// exp(x) for x in [-708, 0]: Cody-Waite reduction x = n log2 + r followed
// by a degree-13 Taylor evaluation of exp(r), |r| <= log2/2.
inline __m256d exp_pd(__m256d x) {
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
  const __m256d inv_ln2 = _mm256_set1_pd(1.44269504088896340736);
  const __m256d lo_clamp = _mm256_set1_pd(-708.0);

  x = _mm256_max_pd(x, lo_clamp);
  const __m256d nf =
      _mm256_round_pd(_mm256_mul_pd(x, inv_ln2), _MM_FROUND_TO_NEAREST_INT);
  __m256d r = _mm256_fnmadd_pd(nf, ln2_hi, x);
  r = _mm256_fnmadd_pd(nf, ln2_lo, r);

  // Horner, coefficients 1/k!.
  __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
  p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

  // Scale by 2^n via exponent construction.
  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(n64, bias), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(pow2));
}

// Simultaneous sin/cos via quadrant reduction y = j pi/2 + r, |r| <= pi/4,
// with Taylor polynomials. Adequate for |y| well below 1e8, far beyond the
// phase arguments produced by any desk-scale assembly.
inline void sincos_pd(__m256d y, __m256d* s_out, __m256d* c_out) {
  const __m256d two_over_pi = _mm256_set1_pd(0.636619772367581343076);
  const __m256d pio2_hi = _mm256_set1_pd(1.57079632673412561417e+00);
  const __m256d pio2_lo = _mm256_set1_pd(6.07710050650619224932e-11);
  const __m256d pio2_lo2 = _mm256_set1_pd(2.02226624879595063154e-21);

  const __m256d jf =
      _mm256_round_pd(_mm256_mul_pd(y, two_over_pi), _MM_FROUND_TO_NEAREST_INT);
  __m256d r = _mm256_fnmadd_pd(jf, pio2_hi, y);
  r = _mm256_fnmadd_pd(jf, pio2_lo, r);
  r = _mm256_fnmadd_pd(jf, pio2_lo2, r);

  const __m256d r2 = _mm256_mul_pd(r, r);

  // sin(r): degree 15 Taylor in r.
  __m256d sp = _mm256_set1_pd(1.0 / 1307674368000.0);  // 1/15!
  sp = _mm256_fnmadd_pd(sp, r2, _mm256_set1_pd(1.0 / 6227020800.0));
  sp = _mm256_fnmadd_pd(sp, r2, _mm256_set1_pd(1.0 / 39916800.0));
  sp = _mm256_fnmadd_pd(sp, r2, _mm256_set1_pd(1.0 / 362880.0));
  sp = _mm256_fnmadd_pd(sp, r2, _mm256_set1_pd(1.0 / 5040.0));
  sp = _mm256_fnmadd_pd(sp, r2, _mm256_set1_pd(1.0 / 120.0));
  sp = _mm256_fnmadd_pd(sp, r2, _mm256_set1_pd(1.0 / 6.0));
  sp = _mm256_fnmadd_pd(sp, r2, _mm256_set1_pd(1.0));
  const __m256d sinr = _mm256_mul_pd(sp, r);

  // cos(r): degree 16 Taylor.
  __m256d cp = _mm256_set1_pd(1.0 / 20922789888000.0);  // 1/16!
  cp = _mm256_fnmadd_pd(cp, r2, _mm256_set1_pd(1.0 / 87178291200.0));
  cp = _mm256_fnmadd_pd(cp, r2, _mm256_set1_pd(1.0 / 479001600.0));
  cp = _mm256_fnmadd_pd(cp, r2, _mm256_set1_pd(1.0 / 3628800.0));
  cp = _mm256_fnmadd_pd(cp, r2, _mm256_set1_pd(1.0 / 40320.0));
  cp = _mm256_fnmadd_pd(cp, r2, _mm256_set1_pd(1.0 / 720.0));
  cp = _mm256_fnmadd_pd(cp, r2, _mm256_set1_pd(1.0 / 24.0));
  cp = _mm256_fnmadd_pd(cp, r2, _mm256_set1_pd(0.5));
  const __m256d cosr = _mm256_fnmadd_pd(cp, r2, _mm256_set1_pd(1.0));

  // Quadrant selection from the low two bits of j.
  const __m128i j32 = _mm256_cvtpd_epi32(jf);
  const __m256i j64 = _mm256_cvtepi32_epi64(j32);
  const __m256i bit0 = _mm256_and_si256(j64, _mm256_set1_epi64x(1));
  const __m256i bit1 = _mm256_and_si256(j64, _mm256_set1_epi64x(2));
  const __m256d swap_mask =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit0, _mm256_set1_epi64x(1)));
  const __m256d neg_mask =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit1, _mm256_set1_epi64x(2)));

  // j mod 4 == 0: (sin, cos) = ( sinr,  cosr)
  //          == 1:             ( cosr, -sinr)
  //          == 2:             (-sinr, -cosr)
  //          == 3:             (-cosr,  sinr)
  __m256d s = _mm256_blendv_pd(sinr, cosr, swap_mask);
  __m256d c = _mm256_blendv_pd(cosr, sinr, swap_mask);
  const __m256d signbit = _mm256_set1_pd(-0.0);
  s = _mm256_xor_pd(s, _mm256_and_pd(neg_mask, signbit));
  const __m256d cneg = _mm256_xor_pd(neg_mask, swap_mask);
  c = _mm256_xor_pd(c, _mm256_and_pd(cneg, signbit));
  *s_out = s;
  *c_out = c;
}

// Interleaves (re, im) lanes into std::complex layout.
inline void store_complex(Complex* dst, __m256d re, __m256d im) {
  const __m256d lo = _mm256_unpacklo_pd(re, im);  // r0 i0 r2 i2
  const __m256d hi = _mm256_unpackhi_pd(re, im);  // r1 i1 r3 i3
  double* out = reinterpret_cast<double*>(dst);
  _mm256_storeu_pd(out, _mm256_permute2f128_pd(lo, hi, 0x20));
  _mm256_storeu_pd(out + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
}

}  // namespace

void yukawa_gf_batch_avx2(Complex shat, const double* dx, const double* dy,
                          const double* dz, const double* w, std::size_t n,
                          Complex* g, Complex* f) {
  const __m256d sr = _mm256_set1_pd(shat.real());
  const __m256d si = _mm256_set1_pd(shat.imag());
  const __m256d inv4pi = _mm256_set1_pd(1.0 / (4.0 * kPi));
  const __m256d one = _mm256_set1_pd(1.0);

  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vx = _mm256_loadu_pd(dx + k);
    const __m256d vy = _mm256_loadu_pd(dy + k);
    const __m256d vz = _mm256_loadu_pd(dz + k);
    const __m256d vw = _mm256_loadu_pd(w + k);

    __m256d r2 = _mm256_mul_pd(vx, vx);
    r2 = _mm256_fmadd_pd(vy, vy, r2);
    r2 = _mm256_fmadd_pd(vz, vz, r2);
    const __m256d r = _mm256_sqrt_pd(r2);

    const __m256d decay = exp_pd(_mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), sr), r));
    __m256d sphase, cphase;
    sincos_pd(_mm256_mul_pd(si, r), &sphase, &cphase);

    const __m256d amp =
        _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(decay, inv4pi), vw), r);
    const __m256d g_re = _mm256_mul_pd(amp, cphase);
    const __m256d g_im = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(amp, sphase));
    store_complex(g + k, g_re, g_im);

    // f = -(1 + shat r) g / r^2
    const __m256d a_re = _mm256_fmadd_pd(sr, r, one);  // Re(1 + shat r)
    const __m256d a_im = _mm256_mul_pd(si, r);         // Im(1 + shat r)
    const __m256d inv_r2 = _mm256_div_pd(one, r2);
    __m256d f_re = _mm256_fmsub_pd(a_im, g_im, _mm256_mul_pd(a_re, g_re));
    __m256d f_im = _mm256_sub_pd(_mm256_setzero_pd(),
                                 _mm256_fmadd_pd(a_re, g_im, _mm256_mul_pd(a_im, g_re)));
    f_re = _mm256_mul_pd(f_re, inv_r2);
    f_im = _mm256_mul_pd(f_im, inv_r2);
    store_complex(f + k, f_re, f_im);
  }
  if (k < n) {
    yukawa_gf_batch_scalar(shat, dx + k, dy + k, dz + k, w + k, n - k, g + k, f + k);
  }
}

}  // namespace mxbem

#else

namespace mxbem {}  // nothing to build on non-x86 targets

#endif
