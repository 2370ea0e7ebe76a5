// SPDX-License-Identifier: Apache-2.0

#include "mxbem/oracle/pair_oracle.hpp"

#include <cmath>

#include "mxbem/oracle/adaptive_quad.hpp"
#include "mxbem/oracle/static_potentials.hpp"

namespace mxbem::oracle {

namespace {

using Tri = std::array<Vec3, 3>;

// e^z - 1 without cancellation for small |z|.
Complex cexpm1(Complex z) {
  const double a = z.real(), b = z.imag();
  const double sh = std::sin(0.5 * b);
  return Complex(std::expm1(a) * std::cos(b) - 2.0 * sh * sh,
                 std::exp(a) * std::sin(b));
}

// phi(u) = (1 - (1+u) e^{-u}) / u^2, entire; relates the smooth remainder
// of grad G to the static kernel: F1(R) + 1/(4 pi R^3) = shat^2 phi(u)/(4 pi R).
Complex phi_fun(Complex u) {
  if (std::abs(u) < 0.5) {
    Complex acc(0, 0), upow(1, 0);
    double fact = 2.0;  // (m+2)! starting at m=0
    for (int m = 0; m <= 14; ++m) {
      const double coef = (m % 2 == 0 ? 1.0 : -1.0) * (m + 1) / fact;
      acc += coef * upow;
      upow *= u;
      fact *= (m + 3);
    }
    return acc;
  }
  return (1.0 - (1.0 + u) * std::exp(-u)) / (u * u);
}

struct BasisFactors {
  double c = 0.0;   // f(x) = c (x - p)
  Vec3 p = Vec3::Zero();
  double div = 0.0;
};

BasisFactors basis_factors(const DivSpace& X, int e, int t) {
  const MeshEdge& edge = X.mesh().edge(e);
  BasisFactors bf;
  const int opp = (t == edge.tri_plus) ? edge.opp_plus : edge.opp_minus;
  bf.p = X.mesh().vertex(opp);
  bf.c = X.sign(e, t) * edge.length / (2.0 * X.mesh().area(t));
  bf.div = 2.0 * bf.c;
  return bf;
}

struct PairContext {
  Tri A, B;
  Vec3 nA, nB;
  int shared = 0;
  Complex shat;
};

// Per-combo test/trial basis data for one ordered panel pair.
struct Combo {
  BasisFactors a, b;
  bool rotated_test = false;  // test with g = nA x f instead of f
};

Vec3 test_vec(const PairContext& ctx, const Combo& cb, const Vec3& x) {
  const Vec3 f = cb.a.c * (x - cb.a.p);
  return cb.rotated_test ? Vec3(ctx.nA.cross(f)) : f;
}

// Full pointwise kernels per tag ----------------------------------------

Complex kernel_V(const PairContext& ctx, const Combo& cb, const Vec3& x, const Vec3& y) {
  const double R = (x - y).norm();
  const Complex G = std::exp(-ctx.shat * R) / (4.0 * kPi * R);
  const Vec3 fa = cb.a.c * (x - cb.a.p);
  const Vec3 fb = cb.b.c * (y - cb.b.p);
  return -(ctx.shat * ctx.shat * fa.dot(fb) + cb.a.div * cb.b.div) * G;
}

Complex kernel_K(const PairContext& ctx, const Combo& cb, const Vec3& x, const Vec3& y) {
  const Vec3 d = x - y;
  const double R = d.norm();
  const Complex u = ctx.shat * R;
  const Complex F1 = -(1.0 + u) * std::exp(-u) / (4.0 * kPi * R * R * R);
  const Vec3 ta = test_vec(ctx, cb, x);
  const Vec3 fb = cb.b.c * (y - cb.b.p);
  return F1 * ta.dot(d.cross(fb));
}

Complex kernel_Vt(const PairContext& ctx, const Combo& cb, const Vec3& x, const Vec3& y) {
  const Vec3 d = x - y;
  const double R = d.norm();
  const Complex u = ctx.shat * R;
  const Complex G = std::exp(-u) / (4.0 * kPi * R);
  const Complex F1 = -(1.0 + u) * G / (R * R);
  const Vec3 ga = ctx.nA.cross(Vec3(cb.a.c * (x - cb.a.p)));
  const Vec3 fb = cb.b.c * (y - cb.b.p);
  return -cb.b.div * F1 * ga.dot(d) + ctx.shat * ctx.shat * G * ga.dot(fb);
}

// Smooth remainders after subtracting the static kernel -----------------

// G - 1/(4 pi R); limit -shat/(4 pi) at R = 0.
Complex smooth_G(Complex shat, double R) {
  if (R == 0.0) return -shat / (4.0 * kPi);
  return cexpm1(-shat * R) / (4.0 * kPi * R);
}

Complex smooth_V(const PairContext& ctx, const Combo& cb, const Vec3& x, const Vec3& y) {
  const double R = (x - y).norm();
  const Complex dG = smooth_G(ctx.shat, R);
  const Vec3 fa = cb.a.c * (x - cb.a.p);
  const Vec3 fb = cb.b.c * (y - cb.b.p);
  return -(ctx.shat * ctx.shat * fa.dot(fb) + cb.a.div * cb.b.div) * dG;
}

Complex smooth_K(const PairContext& ctx, const Combo& cb, const Vec3& x, const Vec3& y) {
  const Vec3 d = x - y;
  const double R = d.norm();
  if (R == 0.0) return Complex(0, 0);  // bounded limit, measure zero
  const Complex dF1 = ctx.shat * ctx.shat * phi_fun(ctx.shat * R) / (4.0 * kPi * R);
  const Vec3 ta = test_vec(ctx, cb, x);
  const Vec3 fb = cb.b.c * (y - cb.b.p);
  return dF1 * ta.dot(d.cross(fb));
}

Complex smooth_Vt(const PairContext& ctx, const Combo& cb, const Vec3& x, const Vec3& y) {
  const Vec3 d = x - y;
  const double R = d.norm();
  const Vec3 ga = ctx.nA.cross(Vec3(cb.a.c * (x - cb.a.p)));
  const Vec3 fb = cb.b.c * (y - cb.b.p);
  const Complex dG = smooth_G(ctx.shat, R);
  Complex acc = ctx.shat * ctx.shat * dG * ga.dot(fb);
  if (R > 0.0) {
    const Complex dF1 = ctx.shat * ctx.shat * phi_fun(ctx.shat * R) / (4.0 * kPi * R);
    acc += -cb.b.div * dF1 * ga.dot(d);
  }
  return acc;
}

// Analytic inner integrals of the static parts over panel B -------------

Complex static_inner_V(const PairContext& ctx, const Combo& cb, const Vec3& x) {
  const auto st = static_triangle_integrals(ctx.B, x);
  const Vec3 fa = cb.a.c * (x - cb.a.p);
  const Vec3 Wb = cb.b.c * (st.Irho + (st.rho - cb.b.p) * st.I1);
  return -(ctx.shat * ctx.shat * fa.dot(Wb) + cb.a.div * cb.b.div * st.I1) /
         (4.0 * kPi);
}

Complex static_inner_K(const PairContext& ctx, const Combo& cb, const Vec3& x) {
  const auto st = static_triangle_integrals(ctx.B, x);
  const Vec3 dvec = st.rho - cb.b.p;
  const Vec3 J = -(cb.b.c / (4.0 * kPi)) *
                 Vec3(st.w0 * st.normal.cross(st.K1) + st.w0K0 * st.normal.cross(dvec) -
                      st.K1.cross(dvec));
  return test_vec(ctx, cb, x).dot(J);
}

Complex static_inner_Vt(const PairContext& ctx, const Combo& cb, const Vec3& x,
                        bool include_grad_term) {
  const auto st = static_triangle_integrals(ctx.B, x);
  const Vec3 ga = ctx.nA.cross(Vec3(cb.a.c * (x - cb.a.p)));
  Complex acc(0, 0);
  if (include_grad_term) {
    const Vec3 grad_int = st.w0K0 * st.normal - st.K1;  // int (x-y)/R^3 dy
    acc += cb.b.div / (4.0 * kPi) * ga.dot(grad_int);
  }
  const Vec3 Wb = cb.b.c * (st.Irho + (st.rho - cb.b.p) * st.I1);
  acc += ctx.shat * ctx.shat / (4.0 * kPi) * ga.dot(Wb);
  return acc;
}

}  // namespace

Complex yukawa_pair_oracle(const Tri& tri_a, const Tri& tri_b, Complex shat,
                           double tol_abs) {
  // Touching pairs: static part analytic-inner + adaptive-outer, smooth
  // remainder by plain 4D adaptivity. Detect touching geometrically.
  bool touching = false;
  for (const auto& va : tri_a)
    for (const auto& vb : tri_b)
      if ((va - vb).norm() < 1e-14) touching = true;

  auto full = [&](const Vec3& x, const Vec3& y) {
    const double R = (x - y).norm();
    return std::exp(-shat * R) / (4.0 * kPi * R);
  };
  if (!touching) {
    return integrate_pair_adaptive(tri_a, tri_b, full, tol_abs);
  }
  auto inner = [&](const Vec3& x) {
    return Complex(static_triangle_integrals(tri_b, x).I1 / (4.0 * kPi), 0.0);
  };
  auto smooth = [&](const Vec3& x, const Vec3& y) {
    return smooth_G(shat, (x - y).norm());
  };
  return integrate_triangle_adaptive(tri_a, inner, 0.5 * tol_abs) +
         integrate_pair_adaptive(tri_a, tri_b, smooth, 0.5 * tol_abs);
}

namespace {

// Shared machinery: all 3x3 edge combos of one ordered panel pair at once.
void pair_block_oracle(const DivSpace& X, OperatorTag tag, Complex shat, int ta,
                       int tb, double tol_abs, Complex out[3][3]) {
  const SurfaceMesh& mesh = X.mesh();
  PairContext ctx;
  for (int k = 0; k < 3; ++k) {
    ctx.A[k] = mesh.triangle_vertex(ta, k);
    ctx.B[k] = mesh.triangle_vertex(tb, k);
  }
  ctx.nA = mesh.normal(ta);
  ctx.nB = mesh.normal(tb);
  ctx.shat = shat;
  ctx.shared = mesh.shared_vertex_count(ta, tb);

  Combo combos[3][3];
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      combos[a][b].a = basis_factors(X, mesh.triangle_edges(ta)[a], ta);
      combos[a][b].b = basis_factors(X, mesh.triangle_edges(tb)[b], tb);
      combos[a][b].rotated_test =
          (tag == OperatorTag::Ktilde || tag == OperatorTag::Vtilde);
    }
  }

  const bool touching = ctx.shared > 0;
  const bool identical = ctx.shared == 3;

  if (identical && (tag == OperatorTag::K || tag == OperatorTag::Ktilde)) {
    // grad G is in-plane on a flat panel, the cross product is normal to
    // it, and the tangential test annihilates it: pointwise zero.
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) out[a][b] = Complex(0, 0);
    return;
  }

  auto full_of = [&](const Combo& cb, const Vec3& x, const Vec3& y) {
    switch (tag) {
      case OperatorTag::V: return kernel_V(ctx, cb, x, y);
      case OperatorTag::K:
      case OperatorTag::Ktilde: return kernel_K(ctx, cb, x, y);
      case OperatorTag::Vtilde: return kernel_Vt(ctx, cb, x, y);
    }
    return Complex(0, 0);
  };

  Complex flat[9];
  if (!touching || ctx.shared == 1) {
    // Plain adaptive integration; the shared-vertex singularity is mild
    // enough for subdivision to resolve.
    MultiPairFn f = [&](const Vec3& x, const Vec3& y, Complex* v) {
      int k = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) v[k++] = full_of(combos[a][b], x, y);
    };
    integrate_pair_adaptive_multi(ctx.A, ctx.B, f, 9, flat, tol_abs);
  } else {
    // Shared edge or identical: singularity subtraction.
    const bool vt_skip_grad = identical && tag == OperatorTag::Vtilde;
    MultiPointFn inner = [&](const Vec3& x, Complex* v) {
      int k = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          switch (tag) {
            case OperatorTag::V: v[k] = static_inner_V(ctx, combos[a][b], x); break;
            case OperatorTag::K:
            case OperatorTag::Ktilde:
              v[k] = static_inner_K(ctx, combos[a][b], x);
              break;
            case OperatorTag::Vtilde:
              v[k] = static_inner_Vt(ctx, combos[a][b], x, !vt_skip_grad);
              break;
          }
          ++k;
        }
    };
    MultiPairFn smooth = [&](const Vec3& x, const Vec3& y, Complex* v) {
      int k = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          switch (tag) {
            case OperatorTag::V: v[k] = smooth_V(ctx, combos[a][b], x, y); break;
            case OperatorTag::K:
            case OperatorTag::Ktilde: v[k] = smooth_K(ctx, combos[a][b], x, y); break;
            case OperatorTag::Vtilde:
              v[k] = smooth_Vt(ctx, combos[a][b], x, y);
              if (vt_skip_grad) {
                // The radial grad part vanishes under the (x,y) swap on
                // identical panels; keep only the weakly singular term.
                const double R = (x - y).norm();
                if (R > 0.0) {
                  const Complex dF1 = ctx.shat * ctx.shat * phi_fun(ctx.shat * R) /
                                      (4.0 * kPi * R);
                  const Vec3 ga = ctx.nA.cross(
                      Vec3(combos[a][b].a.c * (x - combos[a][b].a.p)));
                  v[k] += combos[a][b].b.div * dF1 * ga.dot(x - y);
                }
              }
              break;
          }
          ++k;
        }
    };
    Complex st[9], sm[9];
    integrate_triangle_adaptive_multi(ctx.A, inner, 9, st, 0.5 * tol_abs);
    integrate_pair_adaptive_multi(ctx.A, ctx.B, smooth, 9, sm, 0.5 * tol_abs);
    for (int k = 0; k < 9; ++k) flat[k] = st[k] + sm[k];
  }

  int k = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out[a][b] = flat[k++];
}

}  // namespace

Complex galerkin_pair_entry_oracle(const DivSpace& X, OperatorTag tag, Complex shat,
                                   int ta, int tb, int edge_i, int edge_j,
                                   double tol_abs) {
  const SurfaceMesh& mesh = X.mesh();
  Complex block[3][3];
  pair_block_oracle(X, tag, shat, ta, tb, tol_abs, block);
  int a = -1, b = -1;
  for (int k = 0; k < 3; ++k) {
    if (mesh.triangle_edges(ta)[k] == edge_i) a = k;
    if (mesh.triangle_edges(tb)[k] == edge_j) b = k;
  }
  if (a < 0 || b < 0) {
    throw MxError("galerkin_pair_entry_oracle: edge not on panel");
  }
  return block[a][b];
}

CMatrix galerkin_matrix_oracle(const DivSpace& X, OperatorTag tag, Complex shat,
                               double tol_abs) {
  const SurfaceMesh& mesh = X.mesh();
  CMatrix M = CMatrix::Zero(X.dimension(), X.dimension());
  for (int ta = 0; ta < mesh.num_triangles(); ++ta) {
    for (int tb = 0; tb < mesh.num_triangles(); ++tb) {
      Complex block[3][3];
      pair_block_oracle(X, tag, shat, ta, tb, tol_abs, block);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          M(mesh.triangle_edges(ta)[a], mesh.triangle_edges(tb)[b]) += block[a][b];
        }
      }
    }
  }
  return M;
}

}  // namespace mxbem::oracle
