// SPDX-License-Identifier: Apache-2.0

#include "mxbem/system/transmission.hpp"

namespace mxbem {

TraceSpaces::TraceSpaces(std::shared_ptr<const SurfaceMesh> m)
    : mesh(std::move(m)), X(mesh), Y(mesh) {
  P = duality_gram(X, Y);
  M = mass_matrix(X);
  mass_llt.compute(M);
  if (mass_llt.info() != Eigen::Success) {
    throw MxError("TraceSpaces: mass matrix factorization failed");
  }
}

TraceData TraceData::zero(const TraceSpaces& sp, Complex s) {
  TraceData d;
  d.s = s;
  d.lambda_dual = CVector::Zero(sp.dim());
  d.phi_dual = CVector::Zero(sp.dim());
  d.lambda_coef = CVector::Zero(sp.dim());
  d.phi_coef = CVector::Zero(sp.dim());
  return d;
}

namespace {

CVector solve_mass(const TraceSpaces& sp, const CVector& rhs) {
  CVector out(rhs.size());
  const Vector re = sp.mass_llt.solve(rhs.real());
  const Vector im = sp.mass_llt.solve(rhs.imag());
  for (int i = 0; i < rhs.size(); ++i) out[i] = Complex(re[i], im[i]);
  return out;
}

TraceData build_traces(const TraceSpaces& sp,
                       const std::function<CVec3(const Vec3&, int)>& field,
                       const std::function<CVec3(const Vec3&, int)>& curl_field,
                       Complex s, int degree) {
  const SurfaceMesh& mesh = *sp.mesh;
  auto lambda = [&](const Vec3& x, int t) -> CVec3 {
    // gamma_t^+ curl E = n x curl E
    return mesh.normal(t).cast<Complex>().cross(curl_field(x, t));
  };
  auto phi = [&](const Vec3& x, int t) -> CVec3 {
    // pi_t^+ E = E - (E.n) n
    const CVec3 e = field(x, t);
    const Vec3 n = mesh.normal(t);
    return e - bdot(e, n) * n.cast<Complex>();
  };

  TraceData d;
  d.s = s;
  d.lambda_dual = project_onto_dual(sp.Y, lambda, degree);
  d.phi_dual = project_onto_dual(sp.X, phi, degree);
  d.lambda_coef = solve_mass(sp, project_onto_dual(sp.X, lambda, degree));
  d.phi_coef = solve_mass(sp, project_onto_dual(sp.Y, phi, degree));
  return d;
}

}  // namespace

TraceData incident_traces_ld(const PlaneWave& pw, Complex s, double c_plus,
                             const TraceSpaces& sp, int degree) {
  auto field = [&](const Vec3& x, int) { return pw.field_ld(x, s, c_plus); };
  auto curl = [&](const Vec3& x, int) { return pw.curl_ld(x, s, c_plus); };
  return build_traces(sp, field, curl, s, degree);
}

TraceData incident_traces_td(const PlaneWave& pw, double t, double c_plus,
                             const TraceSpaces& sp, int degree) {
  auto field = [&](const Vec3& x, int) -> CVec3 {
    return pw.field_td(x, t, c_plus).cast<Complex>();
  };
  auto curl = [&](const Vec3& x, int) -> CVec3 {
    return pw.curl_td(x, t, c_plus).cast<Complex>();
  };
  return build_traces(sp, field, curl, Complex(0, 0), degree);
}

LaplaceSystem::LaplaceSystem(Complex s, const Materials& mat, const TraceSpaces& sp,
                             const QuadConfig& quad, int threads)
    : s_(s), mat_(mat), sp_(&sp) {
  if (!(s.real() > 0.0)) throw MxError("LaplaceSystem: Re(s) must be positive");
  const Complex shat_plus = s / mat.c_plus();
  const Complex shat_minus = s / mat.c_minus();
  plus_ = assemble_operators(sp.X, shat_plus, quad, threads);
  minus_ = assemble_operators(sp.X, shat_minus, quad, threads);

  const int n = sp.dim();
  L_.resize(2 * n, 2 * n);
  L_.block(0, 0, n, n) = (1.0 / (s * mat.eps_plus)) * plus_->V -
                         (1.0 / (s * mat.eps_minus)) * minus_->V;
  L_.block(0, n, n, n) = plus_->Ktilde + minus_->Ktilde;
  L_.block(n, 0, n, n) = s * (plus_->K + minus_->K);
  L_.block(n, n, n, n) =
      (1.0 / mat.mu_plus) * plus_->Vtilde + (1.0 / mat.mu_minus) * minus_->Vtilde;

  lu_.compute(L_);
  rcond_ = lu_.rcond();
  if (!(rcond_ > 0.0) || !std::isfinite(rcond_)) {
    throw MxError("LaplaceSystem: singular factorization at s = (" +
                  std::to_string(s.real()) + "," + std::to_string(s.imag()) +
                  "), rcond = " + std::to_string(rcond_));
  }
}

CMatrix LaplaceSystem::R_matrix() const {
  const int n = sp_->dim();
  const double cp = mat_.c_plus();
  CMatrix R(2 * n, 2 * n);
  R.block(0, 0, n, n) = (cp / s_) * (cp / s_) * plus_->V;
  R.block(0, n, n, n) = -0.5 * sp_->P.cast<Complex>() + plus_->Ktilde;
  R.block(n, 0, n, n) =
      (1.0 / mat_.mu_plus) * (-0.5 * sp_->P.transpose().cast<Complex>() + plus_->K);
  R.block(n, n, n, n) = (1.0 / mat_.mu_plus) * plus_->Vtilde;
  return R;
}

CVector LaplaceSystem::apply_R(const TraceData& data) const {
  const int n = sp_->dim();
  const double cp = mat_.c_plus();
  CVector rhs(2 * n);
  rhs.head(n) = (cp / s_) * (cp / s_) * (plus_->V * data.lambda_coef) +
                plus_->Ktilde * data.phi_coef - 0.5 * data.phi_dual;
  rhs.tail(n) = (1.0 / mat_.mu_plus) *
                (plus_->K * data.lambda_coef - 0.5 * data.lambda_dual +
                 plus_->Vtilde * data.phi_coef);
  return rhs;
}

DensityPair LaplaceSystem::solve(const TraceData& data, SolveInfo* info) const {
  const int n = sp_->dim();
  const CVector rhs = apply_R(data);
  DensityPair out;
  if (rhs.norm() == 0.0) {
    out.j = CVector::Zero(n);
    out.m = CVector::Zero(n);
    if (info) {
      info->residual = 0.0;
      info->rcond = rcond_;
    }
    return out;
  }
  const CVector x = lu_.solve(rhs);
  out.j = x.head(n);
  out.m = x.tail(n);
  if (info) {
    info->residual = (L_ * x - rhs).norm() / rhs.norm();
    info->rcond = rcond_;
  }
  return out;
}

DensityPair reconstruct_scat_densities(const DensityPair& pair, const TraceData& data,
                                       Complex s, const Materials& mat) {
  DensityPair out;
  out.m = pair.m - data.phi_coef;
  out.j = pair.j - data.lambda_coef / (s * mat.mu_plus);
  return out;
}

FieldSample represent_fields(const DensityPair& pair, const TraceData& data, Complex s,
                             const Materials& mat, const TraceSpaces& sp, const Vec3& x,
                             int side, const PotentialEvaluator* eval_override) {
  PotentialEvaluator default_eval(sp.X);
  const PotentialEvaluator& pe = eval_override ? *eval_override : default_eval;
  FieldSample out;
  if (side > 0) {
    const Complex shat = s / mat.c_plus();
    const CVector m_scat = pair.m - data.phi_coef;
    const CVector j_scat = pair.j - data.lambda_coef / (s * mat.mu_plus);
    CVec3 Dm, Sm, Dj, Sj;
    pe.eval_DS(m_scat, shat, x, &Dm, &Sm);
    pe.eval_DS(j_scat, shat, x, &Dj, &Sj);
    // E_scat = Dtilde m_scat - (s eps+)^{-1} S j_scat, with n x g = -f
    out.E = -Dm - Sj / (s * mat.eps_plus);
    // curl E_scat = Stilde m_scat + s mu+ D j_scat
    out.curlE = -Sm + s * mat.mu_plus * Dj;
  } else {
    const Complex shat = s / mat.c_minus();
    CVec3 Dm, Sm, Dj, Sj;
    pe.eval_DS(pair.m, shat, x, &Dm, &Sm);
    pe.eval_DS(pair.j, shat, x, &Dj, &Sj);
    // E = (s eps-)^{-1} S j - Dtilde m
    out.E = Sj / (s * mat.eps_minus) + Dm;
    // curl E = -Stilde m - s mu- D j
    out.curlE = Sm - s * mat.mu_minus * Dj;
  }
  return out;
}

}  // namespace mxbem
