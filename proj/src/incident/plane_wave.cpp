// SPDX-License-Identifier: Apache-2.0

#include "mxbem/incident/plane_wave.hpp"

#include <cmath>

namespace mxbem {

namespace {

// Smoothstep S4 (degree 9, C^4) and S5 (degree 11, C^5) on [0,1].
double smoothstep(Signal::Window w, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (w == Signal::Window::c4) {
    return ((((70.0 * x - 315.0) * x + 540.0) * x - 420.0) * x + 126.0) * x * x * x *
           x * x;
  }
  return (((((-252.0 * x + 1386.0) * x - 3080.0) * x + 3465.0) * x - 1980.0) * x +
          462.0) *
         x * x * x * x * x * x;
}

double smoothstep_deriv(Signal::Window w, double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double y = 1.0 - x;
  if (w == Signal::Window::c4) {
    return 630.0 * std::pow(x * y, 4.0);  // 630 x^4 (1-x)^4
  }
  return 2772.0 * std::pow(x * y, 5.0);  // 2772 x^5 (1-x)^5
}

// E_k(z) = int_0^1 u^k e^{z u} du, stable for small |z| via the series.
Complex poly_exp_moment(int k, Complex z) {
  if (std::abs(z) < 0.75) {
    Complex acc(0, 0), zp(1, 0);
    double mfact = 1.0;
    for (int m = 0; m < 40; ++m) {
      acc += zp / (mfact * (k + m + 1));
      zp *= z;
      mfact *= (m + 1);
      if (std::abs(zp) / mfact < 1e-18) break;
    }
    return acc;
  }
  // E_0 = (e^z - 1)/z, E_k = (e^z - k E_{k-1})/z.
  const Complex ez = std::exp(z);
  Complex e = (ez - 1.0) / z;
  for (int m = 1; m <= k; ++m) e = (ez - static_cast<double>(m) * e) / z;
  return e;
}

// Window polynomial coefficients, w(x) = sum c_k x^k on [0,1].
void window_coeffs(Signal::Window w, std::vector<double>& c) {
  if (w == Signal::Window::c4) {
    c.assign(10, 0.0);
    c[5] = 126.0; c[6] = -420.0; c[7] = 540.0; c[8] = -315.0; c[9] = 70.0;
  } else {
    c.assign(12, 0.0);
    c[6] = 462.0; c[7] = -1980.0; c[8] = 3465.0; c[9] = -3080.0;
    c[10] = 1386.0; c[11] = -252.0;
  }
}

}  // namespace

double Signal::psi(double t) const {
  if (t <= 0.0) return 0.0;
  return smoothstep(window, t / ramp) * std::sin(omega * t);
}

double Signal::dpsi(double t) const {
  if (t <= 0.0) return 0.0;
  return smoothstep_deriv(window, t / ramp) / ramp * std::sin(omega * t) +
         smoothstep(window, t / ramp) * omega * std::cos(omega * t);
}

Complex Signal::transform(Complex s) const {
  // psi = w(t/ramp) sin(omega t): head integral over [0, ramp] with the
  // window polynomial, plus the closed-form sinusoid tail.
  const Complex i(0.0, 1.0);
  std::vector<double> c;
  window_coeffs(window, c);

  Complex head(0, 0);
  for (const Complex a : {i * omega - s, -i * omega - s}) {
    Complex sum(0, 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0.0) continue;
      sum += c[k] * poly_exp_moment(static_cast<int>(k), a * ramp);
    }
    const double sign = (a == i * omega - s) ? 1.0 : -1.0;
    head += sign * ramp * sum / (2.0 * i);
  }

  // tail: int_ramp^inf sin(omega t) e^{-s t} dt
  const Complex tail = (std::exp((i * omega - s) * ramp) / (s - i * omega) -
                        std::exp((-i * omega - s) * ramp) / (s + i * omega)) /
                       (2.0 * i);
  return head + tail;
}

PlaneWave::PlaneWave(const Vec3& direction, const Vec3& polarization, Signal sig,
                     double onset_offset)
    : dir(direction.normalized()), pol(polarization), signal(sig), t0(onset_offset) {
  if (!(direction.norm() > 0.0)) throw MxError("PlaneWave: zero direction");
  if (!(polarization.norm() > 0.0)) throw MxError("PlaneWave: zero polarization");
  if (std::abs(dir.dot(pol)) > 1e-12 * pol.norm()) {
    throw MxError("PlaneWave: polarization must be orthogonal to the direction");
  }
}

PlaneWave PlaneWave::for_mesh(const Vec3& direction, const Vec3& polarization,
                              Signal sig, const SurfaceMesh& mesh, double c_plus) {
  const Vec3 d = direction.normalized();
  double max_proj = -std::numeric_limits<double>::infinity();
  for (const auto& v : mesh.vertices()) max_proj = std::max(max_proj, v.dot(d));
  const double t0 = max_proj / c_plus + sig.ramp / 10.0;
  return PlaneWave(direction, polarization, sig, t0);
}

Vec3 PlaneWave::field_td(const Vec3& x, double t, double c_plus) const {
  return pol * signal.psi(t - x.dot(dir) / c_plus - t0);
}

Vec3 PlaneWave::curl_td(const Vec3& x, double t, double c_plus) const {
  return -(1.0 / c_plus) * signal.dpsi(t - x.dot(dir) / c_plus - t0) * dir.cross(pol);
}

Complex PlaneWave::amplitude(Complex s) const {
  return signal.transform(s) * std::exp(-s * t0);
}

CVec3 PlaneWave::field_ld(const Vec3& x, Complex s, double c_plus) const {
  return (amplitude(s) * std::exp(-(s / c_plus) * x.dot(dir))) * pol.cast<Complex>();
}

CVec3 PlaneWave::curl_ld(const Vec3& x, Complex s, double c_plus) const {
  return (-(s / c_plus) * amplitude(s) * std::exp(-(s / c_plus) * x.dot(dir))) *
         dir.cross(pol).cast<Complex>();
}

double PlaneWave::earliest_arrival(const SurfaceMesh& mesh, double c_plus) const {
  double min_proj = std::numeric_limits<double>::infinity();
  for (const auto& v : mesh.vertices()) min_proj = std::min(min_proj, v.dot(dir));
  return t0 + min_proj / c_plus;
}

}  // namespace mxbem
