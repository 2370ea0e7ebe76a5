// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_CORE_TYPES_HPP
#define MXBEM_CORE_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mxbem {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Laplace parameter with strictly positive real part.
struct LaplaceParam {
  Complex s;

  explicit LaplaceParam(Complex value) : s(value) {
    if (!(s.real() > 0.0)) {
      throw std::invalid_argument("LaplaceParam: Re(s) must be positive, got Re(s)=" +
                                  std::to_string(s.real()));
    }
  }

  double sigma() const { return s.real(); }
  double sigma_min() const { return std::min(1.0, s.real()); }
};

struct MxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bilinear (unconjugated) 3-vector pairings. Eigen's dot() conjugates its
// first argument; the duality pairing used throughout is bilinear, with
// conjugation appearing only in norms.
inline Complex bdot(const CVec3& a, const CVec3& b) {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}
inline Complex bdot(const CVec3& a, const Vec3& b) {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}
inline Complex bdot(const Vec3& a, const CVec3& b) {
  return b.x() * a.x() + b.y() * a.y() + b.z() * a.z();
}

}  // namespace mxbem

#endif
