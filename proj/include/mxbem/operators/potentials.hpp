// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_OPERATORS_POTENTIALS_HPP
#define MXBEM_OPERATORS_POTENTIALS_HPP

#include "mxbem/core/types.hpp"
#include "mxbem/spaces/trace_spaces.hpp"

namespace mxbem {

/// Off-surface evaluation of the electromagnetic layer potentials of a
/// discrete div-conforming density j = sum coef_e f_e:
///   D(shat) j = curl int_G G j   = int grad_x G x j
///   S(shat) j = curlcurl int G j = int [Hess G - shat^2 G I] j
/// Rotated densities enter through n x g = -f, so the tilde potentials
/// are sign-flipped evaluations on the same coefficients.
/// curl D j = S j and curl S j = -shat^2 D j off the surface.
class PotentialEvaluator {
 public:
  explicit PotentialEvaluator(const DivSpace& X, int degree = 6)
      : X_(&X), degree_(degree) {}

  CVec3 eval_D(const CVector& fcoef, Complex shat, const Vec3& x) const;
  CVec3 eval_S(const CVector& fcoef, Complex shat, const Vec3& x) const;

  /// Both potentials in one sweep over the panels.
  void eval_DS(const CVector& fcoef, Complex shat, const Vec3& x, CVec3* D,
               CVec3* S) const;

  /// Distance from x to the surface (minimum over panel points).
  double surface_distance(const Vec3& x) const;

  /// Panels closer than near_factor * h switch to adaptive integration;
  /// needed by the near-surface trace and jump diagnostics.
  void set_near_adaptive(bool on, double near_factor = 2.0, double tol = 1e-11) {
    near_adaptive_ = on;
    near_factor_ = near_factor;
    near_tol_ = tol;
  }

 private:
  const DivSpace* X_;
  int degree_;
  bool near_adaptive_ = false;
  double near_factor_ = 2.0;
  double near_tol_ = 1e-11;
};

}  // namespace mxbem

#endif
