// SPDX-License-Identifier: Apache-2.0

#include "mxbem/cq/convolution.hpp"

#include <cmath>

namespace mxbem {

TimeGrid::TimeGrid(double kappa_, int steps_, int order_, double lambda_r)
    : kappa(kappa_), steps(steps_), order(order_), lambda_radius(lambda_r) {
  if (!(kappa > 0.0)) throw MxError("TimeGrid: kappa must be positive");
  if (steps < 1) throw MxError("TimeGrid: need at least one step");
  if (order != 1 && order != 2) throw MxError("TimeGrid: order must be 1 or 2");
  if (lambda_radius == 0.0) {
    lambda_radius = std::pow(std::numeric_limits<double>::epsilon(),
                             0.5 / static_cast<double>(steps + 1));
  }
  if (!(lambda_radius > 0.0 && lambda_radius < 1.0)) {
    throw MxError("TimeGrid: lambda_radius must lie in (0,1)");
  }
}

Complex bdf_symbol(int p, Complex zeta) {
  switch (p) {
    case 1: return 1.0 - zeta;
    case 2: return 1.5 - 2.0 * zeta + 0.5 * zeta * zeta;
    default: throw MxError("bdf_symbol: unsupported order " + std::to_string(p));
  }
}

std::vector<Complex> cq_frequencies(const TimeGrid& grid) {
  const int n1 = grid.samples();
  std::vector<Complex> s(n1);
  for (int l = 0; l < n1; ++l) {
    const double angle = -2.0 * kPi * l / n1;
    const Complex zeta = grid.lr() * Complex(std::cos(angle), std::sin(angle));
    s[l] = bdf_symbol(grid.order, zeta) / grid.kappa;
    if (!(s[l].real() > 0.0)) {
      throw MxError("cq_frequencies: Re s_l <= 0 at l = " + std::to_string(l) +
                    "; decrease lambda_radius");
    }
  }
  return s;
}

CMatrix cq_forward(const TimeGrid& grid, const CMatrix& time_samples) {
  const int n1 = grid.samples();
  if (time_samples.cols() != n1) {
    throw MxError("cq_forward: expected N+1 sample columns");
  }
  const double lr = grid.lr();
  CMatrix scaled = time_samples;
  double pw = 1.0;
  for (int n = 0; n < n1; ++n) {
    scaled.col(n) *= pw;
    pw *= lr;
  }
  CMatrix hat(time_samples.rows(), n1);
  for (int l = 0; l < n1; ++l) {
    CVector acc = CVector::Zero(time_samples.rows());
    for (int n = 0; n < n1; ++n) {
      const double angle = -2.0 * kPi * static_cast<double>(l) * n / n1;
      acc += Complex(std::cos(angle), std::sin(angle)) * scaled.col(n);
    }
    hat.col(l) = acc;
  }
  return hat;
}

CMatrix cq_inverse(const TimeGrid& grid, const CMatrix& hat) {
  const int n1 = grid.samples();
  if (hat.cols() != n1) throw MxError("cq_inverse: expected N+1 columns");
  const double lr = grid.lr();
  CMatrix time(hat.rows(), n1);
  double pw = 1.0;
  for (int n = 0; n < n1; ++n) {
    CVector acc = CVector::Zero(hat.rows());
    for (int l = 0; l < n1; ++l) {
      const double angle = 2.0 * kPi * static_cast<double>(l) * n / n1;
      acc += Complex(std::cos(angle), std::sin(angle)) * hat.col(l);
    }
    time.col(n) = acc / (static_cast<double>(n1) * pw);
    pw *= lr;
  }
  return time;
}

CqOutput cq_apply(const TimeGrid& grid, const CMatrix& samples,
                  const std::function<CVector(int, Complex, const CVector&)>& transfer,
                  int dim_out, bool conjugate_symmetric) {
  const int n1 = grid.samples();
  CqOutput out;
  out.freqs = cq_frequencies(grid);
  const CMatrix data_hat = cq_forward(grid, samples);
  out.hat.resize(dim_out, n1);

  if (conjugate_symmetric && samples.imag().cwiseAbs().maxCoeff() > 0.0) {
    conjugate_symmetric = false;
  }

  const int half = conjugate_symmetric ? n1 / 2 : n1 - 1;
  for (int l = 0; l <= half; ++l) {
    out.hat.col(l) = transfer(l, out.freqs[l], data_hat.col(l));
  }
  if (conjugate_symmetric) {
    for (int l = half + 1; l < n1; ++l) {
      out.hat.col(l) = out.hat.col(n1 - l).conjugate();
    }
  }
  out.time = cq_inverse(grid, out.hat);
  return out;
}

DensityHistory cq_convolution_solve(const TimeGrid& grid,
                                    const std::function<TraceData(double)>& sampler,
                                    const Materials& mat, const TraceSpaces& sp,
                                    const QuadConfig& quad, int threads) {
  const int n1 = grid.samples();
  const int dim = sp.dim();

  CMatrix samples(4 * dim, n1);
  for (int n = 0; n < n1; ++n) {
    const TraceData d = sampler(grid.time(n));
    samples.col(n).segment(0, dim) = d.lambda_dual;
    samples.col(n).segment(dim, dim) = d.phi_dual;
    samples.col(n).segment(2 * dim, dim) = d.lambda_coef;
    samples.col(n).segment(3 * dim, dim) = d.phi_coef;
  }

  auto transfer = [&](int, Complex s_l, const CVector& col) -> CVector {
    TraceData d;
    d.s = s_l;
    d.lambda_dual = col.segment(0, dim);
    d.phi_dual = col.segment(dim, dim);
    d.lambda_coef = col.segment(2 * dim, dim);
    d.phi_coef = col.segment(3 * dim, dim);
    const LaplaceSystem sys(s_l, mat, sp, quad, threads);
    const DensityPair pair = sys.solve(d);
    CVector out(2 * dim);
    out.head(dim) = pair.j;
    out.tail(dim) = pair.m;
    return out;
  };

  const CqOutput res = cq_apply(grid, samples, transfer, 2 * dim, true);

  DensityHistory hist(grid);
  hist.freqs = res.freqs;
  hist.j_time = res.time.topRows(dim);
  hist.m_time = res.time.bottomRows(dim);
  hist.j_hat = res.hat.topRows(dim);
  hist.m_hat = res.hat.bottomRows(dim);
  hist.data_hat = cq_forward(grid, samples);
  return hist;
}

CMatrix cq_field_eval(const DensityHistory& hist, const Materials& mat,
                      const TraceSpaces& sp, const std::vector<Vec3>& points,
                      const std::vector<int>& sides) {
  if (points.size() != sides.size()) {
    throw MxError("cq_field_eval: points and sides length mismatch");
  }
  const TimeGrid& grid = hist.grid;
  const int n1 = grid.samples();
  const int dim = sp.dim();
  const int rows = static_cast<int>(3 * points.size());
  CMatrix hat(rows, n1);

  const int half = n1 / 2;
  for (int l = 0; l <= half; ++l) {
    const Complex s_l = hist.freqs[l];
    DensityPair pair{hist.j_hat.col(l), hist.m_hat.col(l)};
    TraceData d;
    d.s = s_l;
    d.lambda_dual = hist.data_hat.col(l).segment(0, dim);
    d.phi_dual = hist.data_hat.col(l).segment(dim, dim);
    d.lambda_coef = hist.data_hat.col(l).segment(2 * dim, dim);
    d.phi_coef = hist.data_hat.col(l).segment(3 * dim, dim);
    for (std::size_t p = 0; p < points.size(); ++p) {
      const FieldSample f =
          represent_fields(pair, d, s_l, mat, sp, points[p], sides[p]);
      hat.col(l).segment(3 * p, 3) = f.E;
    }
  }
  for (int l = half + 1; l < n1; ++l) {
    hat.col(l) = hat.col(n1 - l).conjugate();
  }
  return cq_inverse(grid, hat);
}

}  // namespace mxbem
