// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mxbem/kernels/yukawa.hpp"

using namespace mxbem;

TEST_CASE("yukawa kernel closed-form values") {
  const Complex g1 = yukawa_kernel(Vec3(0, 0, 0), Vec3(1, 0, 0), Complex(1, 0));
  CHECK(g1.real() == doctest::Approx(std::exp(-1.0) / (4.0 * kPi)).epsilon(1e-15));
  CHECK(g1.imag() == doctest::Approx(0.0));
  CHECK(g1.real() == doctest::Approx(0.0292701).epsilon(1e-5));

  const Complex g2 = yukawa_kernel(Vec3(0, 0, 0), Vec3(0, 0.5, 0), Complex(2, 0));
  CHECK(g2.real() == doctest::Approx(std::exp(-1.0) / (2.0 * kPi)).epsilon(1e-15));

  // phase exactly 2 pi: back to the real axis
  const Complex g3 =
      yukawa_kernel(Vec3(0, 0, 0), Vec3(0, 0, 1), Complex(1.0, 2.0 * kPi));
  CHECK(g3.real() == doctest::Approx(std::exp(-1.0) / (4.0 * kPi)).epsilon(1e-12));
  CHECK(std::abs(g3.imag()) <= 1e-16);

  CHECK_THROWS_AS(yukawa_kernel(Vec3(1, 2, 3), Vec3(1, 2, 3), Complex(1, 0)), MxError);
}

TEST_CASE("kernel decay bound |G| <= e^{-sigma r}/(4 pi r)") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> sig(0.05, 5.0);
  std::uniform_real_distribution<double> om(-40.0, 40.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 x(u(rng), u(rng), u(rng));
    const Vec3 y(u(rng), u(rng), u(rng));
    if ((x - y).norm() < 1e-6) continue;
    const Complex s(sig(rng), om(rng));
    const double r = (x - y).norm();
    CHECK(std::abs(yukawa_kernel(x, y, s)) <=
          std::exp(-s.real() * r) / (4.0 * kPi * r) * (1.0 + 1e-14));
  }
}

TEST_CASE("derivative factors agree with finite differences") {
  const Complex shat(0.8, 1.7);
  const Vec3 y(0.1, -0.2, 0.05);
  const Vec3 x(0.9, 0.4, -0.3);
  const double h = 1e-5;
  const auto d = yukawa_derivs((x - y).norm(), shat);

  for (int i = 0; i < 3; ++i) {
    Vec3 xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const Complex fd =
        (yukawa_kernel(xp, y, shat) - yukawa_kernel(xm, y, shat)) / (2.0 * h);
    const Complex an = d.f1 * (x - y)[i];
    CHECK(std::abs(fd - an) <= 1e-8 * std::abs(an));
  }

  // Hessian diagonal and off-diagonal entries.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      Vec3 xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += h; xpp[j] += h;
      xpm[i] += h; xpm[j] -= h;
      xmp[i] -= h; xmp[j] += h;
      xmm[i] -= h; xmm[j] -= h;
      const Complex fd = (yukawa_kernel(xpp, y, shat) - yukawa_kernel(xpm, y, shat) -
                          yukawa_kernel(xmp, y, shat) + yukawa_kernel(xmm, y, shat)) /
                         (4.0 * h * h);
      Complex an = d.f2 * (x - y)[i] * (x - y)[j];
      if (i == j) an += d.f1;
      CHECK(std::abs(fd - an) <= 1e-5 * (std::abs(an) + std::abs(d.f1)));
    }
  }
}

namespace {

void fill_random_batch(std::mt19937_64& rng, std::size_t n, std::vector<double>& dx,
                       std::vector<double>& dy, std::vector<double>& dz,
                       std::vector<double>& w) {
  std::uniform_real_distribution<double> comp(-3.0, 3.0);
  std::uniform_real_distribution<double> wdist(0.0, 1.0);
  dx.resize(n); dy.resize(n); dz.resize(n); w.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec3 d;
    do {
      d = Vec3(comp(rng), comp(rng), comp(rng));
    } while (d.norm() < 1e-3);
    dx[k] = d.x(); dy[k] = d.y(); dz[k] = d.z();
    w[k] = wdist(rng);
  }
}

}  // namespace

TEST_CASE("scalar batch matches the pointwise formula") {
  std::mt19937_64 rng(7);
  std::vector<double> dx, dy, dz, w;
  fill_random_batch(rng, 64, dx, dy, dz, w);
  const Complex shat(1.3, -2.1);
  std::vector<Complex> g(64), f(64);
  yukawa_gf_batch_scalar(shat, dx.data(), dy.data(), dz.data(), w.data(), 64,
                         g.data(), f.data());
  for (std::size_t k = 0; k < 64; ++k) {
    const Vec3 d(dx[k], dy[k], dz[k]);
    const double r = d.norm();
    const Complex gexp = w[k] * std::exp(-shat * r) / (4.0 * kPi * r);
    const Complex fexp = -(1.0 + shat * r) * gexp / (r * r);
    CHECK(std::abs(g[k] - gexp) <= 1e-15 * std::abs(gexp));
    CHECK(std::abs(f[k] - fexp) <= 1e-14 * std::abs(fexp));
  }
}

TEST_CASE("avx2 batch is equivalent to the scalar reference") {
  if (!cpu_has_avx2()) {
    MESSAGE("AVX2 not available; skipping equivalence test");
    return;
  }
  std::mt19937_64 rng(123);
  const Complex shats[] = {{1.0, 0.0}, {1.0, 2.0}, {0.5, 32.0}, {10.0, 100.0},
                           {2.0, -17.0}, {0.01, 0.3}};
  for (const Complex shat : shats) {
    for (std::size_t n : {1u, 3u, 4u, 17u, 1024u}) {
      std::vector<double> dx, dy, dz, w;
      fill_random_batch(rng, n, dx, dy, dz, w);
      std::vector<Complex> gs(n), fs(n), gv(n), fv(n);
      yukawa_gf_batch_scalar(shat, dx.data(), dy.data(), dz.data(), w.data(), n,
                             gs.data(), fs.data());
      yukawa_gf_batch_avx2(shat, dx.data(), dy.data(), dz.data(), w.data(), n,
                           gv.data(), fv.data());
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(gv[k] - gs[k]) <= 2e-13 * std::abs(gs[k]) + 1e-300);
        CHECK(std::abs(fv[k] - fs[k]) <= 2e-13 * std::abs(fs[k]) + 1e-300);
      }
    }
  }
}

TEST_CASE("runtime dispatch honors the requested level") {
  const SimdLevel initial = active_simd_level();
  set_simd_level(SimdLevel::scalar);
  CHECK(yukawa_gf_batch_fn() == &yukawa_gf_batch_scalar);
  if (cpu_has_avx2()) {
    set_simd_level(SimdLevel::avx2);
    CHECK(yukawa_gf_batch_fn() == &yukawa_gf_batch_avx2);
  }
  set_simd_level(initial);
}

TEST_CASE("laplace parameter requires positive real part") {
  CHECK_THROWS_AS(LaplaceParam(Complex(0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(LaplaceParam(Complex(-1.0, 0.0)), std::invalid_argument);
  const LaplaceParam p(Complex(0.25, 3.0));
  CHECK(p.sigma() == 0.25);
  CHECK(p.sigma_min() == 0.25);
  CHECK(LaplaceParam(Complex(4.0, 0.0)).sigma_min() == 1.0);
}
