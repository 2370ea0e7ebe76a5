// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_ORACLE_MIE_HPP
#define MXBEM_ORACLE_MIE_HPP

#include <vector>

#include "mxbem/core/types.hpp"
#include "mxbem/incident/plane_wave.hpp"
#include "mxbem/system/transmission.hpp"

namespace mxbem::oracle {

/// Vector spherical-wave solution for a homogeneous dielectric sphere at
/// complex Laplace parameter s (wavenumbers k+- = i s/c+-, so that the
/// incident e^{i k z} equals the Laplace-domain plane wave e^{-s z/c}).
/// Mode coefficients solve the per-mode 2x2 interface systems enforcing
/// continuity of tangential E and mu^{-1} tangential curl E.
struct MieSolution {
  double radius = 1.0;
  Materials mat;
  Complex s;
  Complex k_plus, k_minus;
  Complex E0;            // complex incident amplitude (signal transform)
  Vec3 ex, ey, ez;       // propagation frame: ez = direction, ex = polarization
  std::vector<Complex> a, b, c, d;  // TM/TE scattered + interior, index n-1

  int lmax() const { return static_cast<int>(a.size()); }
};

/// Builds the solution with adaptive truncation: the order grows in steps
/// of 5 until probe-point fields change by less than 1e-10 relative.
MieSolution mie_sphere_ld(double radius, const Materials& mat, Complex s,
                          const PlaneWave& pw);

/// Scattered field for |x| > radius, total interior field for |x| < radius.
CVec3 eval_mie(const MieSolution& sol, const Vec3& x);
CVec3 eval_mie_curl(const MieSolution& sol, const Vec3& x);

/// Raw expansion evaluations (usable on the interface r = radius).
CVec3 eval_mie_scattered(const MieSolution& sol, const Vec3& x, CVec3* curl = nullptr);
CVec3 eval_mie_interior(const MieSolution& sol, const Vec3& x, CVec3* curl = nullptr);
/// Incident-field series (diagnostic; should reproduce the plane wave).
CVec3 eval_mie_incident(const MieSolution& sol, const Vec3& x, CVec3* curl = nullptr);

/// Spherical Bessel j_n and h^(1)_n for complex argument, n = 0..nmax
/// (downward recurrence with normalization for j, upward for h).
void spherical_bessel_jh(Complex z, int nmax, std::vector<Complex>& j,
                         std::vector<Complex>& h);

}  // namespace mxbem::oracle

#endif
