// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_INCIDENT_PLANE_WAVE_HPP
#define MXBEM_INCIDENT_PLANE_WAVE_HPP

#include "mxbem/core/types.hpp"
#include "mxbem/geometry/mesh.hpp"

namespace mxbem {

/// Causal scalar profile psi(t) = w(t/ramp) sin(omega t), with w a
/// polynomial smoothstep: zero with four (c4) or five (c5) vanishing
/// derivatives at 0, identically 1 beyond the ramp.
struct Signal {
  enum class Window { c4, c5 };
  double omega = 2.0;
  double ramp = 1.0;
  Window window = Window::c4;

  double psi(double t) const;
  double dpsi(double t) const;

  /// Laplace transform of psi (onset at t = 0, no offset).
  Complex transform(Complex s) const;
};

/// Incident plane wave E(x,t) = pol psi(t - x.d/c - t0). The onset offset
/// t0 keeps the wavefront away from the surface at t = 0.
struct PlaneWave {
  Vec3 dir;
  Vec3 pol;
  Signal signal;
  double t0 = 0.0;

  PlaneWave(const Vec3& direction, const Vec3& polarization, Signal sig,
            double onset_offset);

  /// Chooses t0 = max_Gamma(x.d)/c + ramp/10 automatically.
  static PlaneWave for_mesh(const Vec3& direction, const Vec3& polarization,
                            Signal sig, const SurfaceMesh& mesh, double c_plus);

  // Time domain fields.
  Vec3 field_td(const Vec3& x, double t, double c_plus) const;
  Vec3 curl_td(const Vec3& x, double t, double c_plus) const;

  // Laplace domain fields, amplitude Psi(s) e^{-s t0}.
  Complex amplitude(Complex s) const;
  CVec3 field_ld(const Vec3& x, Complex s, double c_plus) const;
  CVec3 curl_ld(const Vec3& x, Complex s, double c_plus) const;

  /// Latest arrival time of the wavefront on the mesh (all of Gamma is
  /// still at rest for t below the earliest arrival).
  double earliest_arrival(const SurfaceMesh& mesh, double c_plus) const;
};

}  // namespace mxbem

#endif
