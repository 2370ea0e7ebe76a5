// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_CQ_CONVOLUTION_HPP
#define MXBEM_CQ_CONVOLUTION_HPP

#include <functional>
#include <vector>

#include "mxbem/core/types.hpp"
#include "mxbem/system/transmission.hpp"

namespace mxbem {

/// Convolution Quadrature grid: step kappa, N steps (N+1 samples at
/// t_n = n kappa), multistep order p in {1,2} (BDF1/BDF2), and the
/// scaled-DFT contour radius lambda_r in (0,1).
struct TimeGrid {
  double kappa = 0.1;
  int steps = 64;
  int order = 2;
  double lambda_radius = 0.0;  // 0 selects eps^{1/(2(N+1))}

  TimeGrid(double kappa_, int steps_, int order_, double lambda_r = 0.0);
  double horizon() const { return kappa * steps; }
  int samples() const { return steps + 1; }
  double lr() const { return lambda_radius; }
  double time(int n) const { return kappa * n; }
};

/// BDF generating functions: delta_1(z) = 1 - z,
/// delta_2(z) = 3/2 - 2z + z^2/2.
Complex bdf_symbol(int p, Complex zeta);

/// Frequency ladder s_l = delta(lambda_r zeta^{-l})/kappa, l = 0..N, with
/// zeta = e^{2 pi i/(N+1)}. All Re s_l > 0; s_{N+1-l} = conj(s_l).
std::vector<Complex> cq_frequencies(const TimeGrid& grid);

/// Scaled DFT pair underlying the all-steps-at-once CQ evaluation:
/// forward maps time samples (columns) to contour samples, inverse maps
/// back and removes the lambda_r^n scaling.
CMatrix cq_forward(const TimeGrid& grid, const CMatrix& time_samples);
CMatrix cq_inverse(const TimeGrid& grid, const CMatrix& hat);

struct CqOutput {
  CMatrix time;  // dim_out x (N+1)
  CMatrix hat;   // dim_out x (N+1), the per-frequency transfer outputs
  std::vector<Complex> freqs;
};

/// Applies a Laplace-domain transfer function as a causal convolution:
/// scale, DFT, per-frequency transfer, inverse DFT, unscale. With
/// conjugate_symmetric (requires real input samples and a transfer
/// commuting with conjugation) only half the frequencies are evaluated.
CqOutput cq_apply(const TimeGrid& grid, const CMatrix& samples,
                  const std::function<CVector(int, Complex, const CVector&)>& transfer,
                  int dim_out, bool conjugate_symmetric = true);

struct DensityHistory {
  TimeGrid grid;
  CMatrix j_time, m_time;  // E x (N+1)
  CMatrix j_hat, m_hat;
  CMatrix data_hat;  // stacked transformed trace data, 4E x (N+1)
  std::vector<Complex> freqs;

  explicit DensityHistory(TimeGrid g) : grid(g) {}
};

/// Full time-domain solve: samples the causal data, solves the
/// transmission system on the frequency ladder, and transforms back.
DensityHistory cq_convolution_solve(const TimeGrid& grid,
                                    const std::function<TraceData(double)>& sampler,
                                    const Materials& mat, const TraceSpaces& sp,
                                    const QuadConfig& quad, int threads = 0);

/// Field traces at probe points from a density history; reuses the
/// frequency-domain solutions. Rows: 3 field components per point (E_scat
/// for side +1, total interior E for side -1); columns: time steps.
CMatrix cq_field_eval(const DensityHistory& hist, const Materials& mat,
                      const TraceSpaces& sp, const std::vector<Vec3>& points,
                      const std::vector<int>& sides);

}  // namespace mxbem

#endif
