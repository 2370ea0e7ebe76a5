// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_SYSTEM_TRANSMISSION_HPP
#define MXBEM_SYSTEM_TRANSMISSION_HPP

#include <memory>
#include <vector>

#include "mxbem/core/types.hpp"
#include "mxbem/incident/plane_wave.hpp"
#include "mxbem/operators/assemble.hpp"
#include "mxbem/operators/potentials.hpp"
#include "mxbem/spaces/trace_spaces.hpp"

namespace mxbem {

struct Materials {
  double eps_plus = 1.0, mu_plus = 1.0, eps_minus = 1.0, mu_minus = 1.0;

  Materials() = default;
  Materials(double ep, double mp, double em, double mm)
      : eps_plus(ep), mu_plus(mp), eps_minus(em), mu_minus(mm) {
    if (!(ep > 0 && mp > 0 && em > 0 && mm > 0)) {
      throw MxError("Materials: all constants must be positive");
    }
  }
  double c_plus() const { return 1.0 / std::sqrt(eps_plus * mu_plus); }
  double c_minus() const { return 1.0 / std::sqrt(eps_minus * mu_minus); }
};

/// Discrete trace spaces with the pairing and interpolation machinery:
/// P carries the weak-form duality pairings (forward products only; it is
/// exactly rank-deficient on subdivided icospheres), the SPD mass matrix
/// provides dual-to-primal interpolation.
struct TraceSpaces {
  std::shared_ptr<const SurfaceMesh> mesh;
  DivSpace X;
  CurlSpace Y;
  Matrix P;  // P[i][j] = int f_i . g_j
  Matrix M;  // L2 gram of the RWG basis (same for the rotated basis)
  Eigen::LLT<Matrix> mass_llt;

  explicit TraceSpaces(std::shared_ptr<const SurfaceMesh> m);
  int dim() const { return X.dimension(); }
};

/// Incident-field data traces. The duals are the functionals entering the
/// weak form; the coefficient vectors are L2 interpolants used wherever a
/// primal representative is required.
struct TraceData {
  Complex s{0.0, 0.0};
  CVector lambda_dual;  // int lambda . g_i
  CVector phi_dual;     // int f_i . phi
  CVector lambda_coef;  // interpolant of lambda in X_h
  CVector phi_coef;     // interpolant of phi in Y_h

  static TraceData zero(const TraceSpaces& sp, Complex s = Complex(0, 0));
};

TraceData incident_traces_ld(const PlaneWave& pw, Complex s, double c_plus,
                             const TraceSpaces& sp, int degree = 6);
TraceData incident_traces_td(const PlaneWave& pw, double t, double c_plus,
                             const TraceSpaces& sp, int degree = 6);

struct DensityPair {
  CVector j, m;
};

struct SolveInfo {
  double residual = 0.0;  // |L x - rhs| / |rhs|
  double rcond = 0.0;
};

/// The Galerkin transmission system at one Laplace parameter: the 2E x 2E
/// block matrix, its LU factorization, and the right-hand side machinery.
class LaplaceSystem {
 public:
  LaplaceSystem(Complex s, const Materials& mat, const TraceSpaces& sp,
                const QuadConfig& quad, int threads = 0);

  Complex s() const { return s_; }
  const Materials& materials() const { return mat_; }
  const CMatrix& L() const { return L_; }

  /// Right-hand-side block matrix acting on the stacked primal vector
  /// (lambda; phi); the Gram parts appear as -P/2 and -P^T/2.
  CMatrix R_matrix() const;

  /// R applied to data with the Gram pairings taken from the exact dual
  /// functionals (no interpolation error in those terms).
  CVector apply_R(const TraceData& data) const;

  DensityPair solve(const TraceData& data, SolveInfo* info = nullptr) const;

  const OperatorSet& ops_plus() const { return *plus_; }
  const OperatorSet& ops_minus() const { return *minus_; }

 private:
  Complex s_;
  Materials mat_;
  const TraceSpaces* sp_;
  std::shared_ptr<const OperatorSet> plus_, minus_;
  CMatrix L_;
  Eigen::PartialPivLU<CMatrix> lu_;
  double rcond_ = 0.0;
};

/// Eliminated scattered densities m_scat = m - phi, j_scat = j - lambda/(s mu+).
DensityPair reconstruct_scat_densities(const DensityPair& pair, const TraceData& data,
                                       Complex s, const Materials& mat);

struct FieldSample {
  CVec3 E = CVec3::Zero();
  CVec3 curlE = CVec3::Zero();
};

/// Field representation at an off-surface point. side = +1: scattered
/// fields in the exterior; side = -1: total fields in the interior.
FieldSample represent_fields(const DensityPair& pair, const TraceData& data, Complex s,
                             const Materials& mat, const TraceSpaces& sp, const Vec3& x,
                             int side, const PotentialEvaluator* eval_override = nullptr);

}  // namespace mxbem

#endif
