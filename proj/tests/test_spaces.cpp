// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "mxbem/geometry/mesh.hpp"
#include "mxbem/oracle/adaptive_quad.hpp"
#include "mxbem/quadrature/gauss.hpp"
#include "mxbem/spaces/trace_spaces.hpp"

using namespace mxbem;

namespace {

std::shared_ptr<const SurfaceMesh> sphere(int level) {
  return std::make_shared<SurfaceMesh>(make_icosphere(level, 1.0, Vec3::Zero()));
}

Vec3 point_on(const SurfaceMesh& m, int t, double a, double b) {
  return map_triangle(m.triangle_vertex(t, 0), m.triangle_vertex(t, 1),
                      m.triangle_vertex(t, 2), a, b);
}

}  // namespace

TEST_CASE("div space dimension equals edge count and div has closed form") {
  auto mesh = sphere(0);
  DivSpace X(mesh);
  CHECK(X.dimension() == 30);
  for (int e = 0; e < mesh->num_edges(); ++e) {
    const auto& ed = mesh->edge(e);
    CHECK(X.basis_div(e, ed.tri_plus) ==
          doctest::Approx(ed.length / mesh->area(ed.tri_plus)).epsilon(1e-14));
    CHECK(X.basis_div(e, ed.tri_minus) ==
          doctest::Approx(-ed.length / mesh->area(ed.tri_minus)).epsilon(1e-14));
  }
}

TEST_CASE("RWG normal continuity: unit normal component and flux l_e") {
  auto mesh = sphere(1);
  DivSpace X(mesh);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  for (int e = 0; e < mesh->num_edges(); e += 7) {
    const auto& ed = mesh->edge(e);
    const Vec3 A = mesh->vertex(ed.v0);
    const Vec3 B = mesh->vertex(ed.v1);
    for (int side = 0; side < 2; ++side) {
      const int t = side == 0 ? ed.tri_plus : ed.tri_minus;
      // in-plane outward normal of edge e wrt triangle t
      const Vec3 ehat = (B - A).normalized();
      const int opp = side == 0 ? ed.opp_plus : ed.opp_minus;
      Vec3 nu = (A - mesh->vertex(opp)) -
                (A - mesh->vertex(opp)).dot(ehat) * ehat;
      nu.normalize();
      // pointwise unit normal component, sign +1 out of T+, -1 out of T-
      const double expected = side == 0 ? 1.0 : -1.0;
      for (int k = 0; k < 4; ++k) {
        const Vec3 x = A + u01(rng) * (B - A);
        CHECK(X.basis(e, t, x).dot(nu) == doctest::Approx(expected).epsilon(1e-12));
      }
      // flux by 1D Gauss along the edge
      const auto& g = gauss_legendre_01(8);
      double flux = 0.0;
      for (int k = 0; k < 8; ++k) {
        const Vec3 x = A + g.x[k] * (B - A);
        flux += g.w[k] * ed.length * X.basis(e, t, x).dot(nu);
      }
      CHECK(flux == doctest::Approx(expected * ed.length).epsilon(1e-12));
      // normal component vanishes on the other two edges
      for (int kk = 0; kk < 3; ++kk) {
        const int eo = mesh->triangle_edges(t)[kk];
        if (eo == e) continue;
        const auto& edo = mesh->edge(eo);
        const Vec3 Ao = mesh->vertex(edo.v0), Bo = mesh->vertex(edo.v1);
        const Vec3 ehato = (Bo - Ao).normalized();
        const int oppo = (t == edo.tri_plus) ? edo.opp_plus : edo.opp_minus;
        Vec3 nuo = (Ao - mesh->vertex(oppo)) -
                   (Ao - mesh->vertex(oppo)).dot(ehato) * ehato;
        nuo.normalize();
        const Vec3 x = Ao + 0.37 * (Bo - Ao);
        CHECK(std::abs(X.basis(e, t, x).dot(nuo)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("curl space: rotation preserves length, tangency, orthogonality") {
  auto mesh = sphere(1);
  DivSpace X(mesh);
  CurlSpace Y(mesh);
  CHECK(Y.dimension() == mesh->num_edges());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 0.8);
  for (int t = 0; t < mesh->num_triangles(); t += 11) {
    const double a = u(rng);
    const double b = a * u(rng);
    const Vec3 x = point_on(*mesh, t, a, b);
    const Vec3 n = mesh->normal(t);
    for (int k = 0; k < 3; ++k) {
      const int e = mesh->triangle_edges(t)[k];
      const Vec3 f = X.basis(e, t, x);
      const Vec3 g = Y.basis(e, t, x);
      CHECK(g.norm() == doctest::Approx(f.norm()).epsilon(1e-13));
      CHECK(std::abs(g.dot(n)) <= 1e-13 * f.norm());
      CHECK(std::abs(f.dot(g)) <= 1e-13 * f.norm() * f.norm());
      // rotation involution n x (n x f) = -f
      CHECK((n.cross(g) + f).norm() <= 1e-13 * f.norm());
    }
  }
}

TEST_CASE("duality gram: zero diagonal, skew symmetry, locality") {
  for (int level : {0, 1}) {
    auto mesh = sphere(level);
    DivSpace X(mesh);
    CurlSpace Y(mesh);
    const Matrix P = duality_gram(X, Y);
    const double scale = P.cwiseAbs().maxCoeff();
    // f.(n x f) vanishes pointwise; entries only accumulate roundoff
    for (int i = 0; i < P.rows(); ++i) CHECK(std::abs(P(i, i)) <= 1e-15 * scale);
    CHECK((P + P.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * scale);
    // disjoint supports give exact zeros
    int zero_checked = 0;
    for (int i = 0; i < P.rows() && zero_checked < 50; ++i) {
      const auto& ei = mesh->edge(i);
      for (int j = 0; j < P.cols() && zero_checked < 50; ++j) {
        const auto& ej = mesh->edge(j);
        const bool share =
            ei.tri_plus == ej.tri_plus || ei.tri_plus == ej.tri_minus ||
            ei.tri_minus == ej.tri_plus || ei.tri_minus == ej.tri_minus;
        if (!share) {
          CHECK(P(i, j) == 0.0);
          ++zero_checked;
        }
      }
    }
  }
}

TEST_CASE("mixed gram rank: invertible on coarse meshes, deficient after subdivision") {
  // The RWG / rotated-RWG pairing matrix is exactly rank-deficient on
  // subdivided icospheres (nullity 30 at level 1). Interpolation therefore
  // goes through the SPD mass matrix; P is used for forward pairings only.
  {
    auto mesh = sphere(0);
    DivSpace X(mesh);
    CurlSpace Y(mesh);
    Eigen::FullPivLU<Matrix> lu(duality_gram(X, Y));
    CHECK(lu.isInvertible());
  }
  {
    auto mesh = sphere(1);
    DivSpace X(mesh);
    CurlSpace Y(mesh);
    const Matrix P = duality_gram(X, Y);
    Eigen::JacobiSVD<Matrix> svd(P);
    const auto& sv = svd.singularValues();
    int nullity = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) < 1e-12 * sv(0)) ++nullity;
    CHECK(nullity == 30);
  }
}

TEST_CASE("mass matrix is symmetric positive definite") {
  auto mesh = sphere(0);
  DivSpace X(mesh);
  const Matrix M = mass_matrix(X);
  CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * M.cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("divergence of any RWG combination integrates to zero on closed surfaces") {
  auto mesh = sphere(1);
  DivSpace X(mesh);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Vector coef(X.dimension());
    for (int i = 0; i < coef.size(); ++i) coef[i] = gauss(rng);
    double total = 0.0;
    for (int t = 0; t < mesh->num_triangles(); ++t) {
      double div_t = 0.0;
      for (int k = 0; k < 3; ++k) {
        const int e = mesh->triangle_edges(t)[k];
        div_t += coef[e] * X.basis_div(e, t);
      }
      total += div_t * mesh->area(t);
    }
    CHECK(std::abs(total) <= 1e-12 * coef.norm());
  }
}

TEST_CASE("project_onto_dual: zero field, basis column, adaptive oracle") {
  auto mesh = sphere(1);
  DivSpace X(mesh);
  CurlSpace Y(mesh);

  const CVector zero = project_onto_dual(
      X, [](const Vec3&, int) { return CVec3::Zero(); });
  CHECK(zero.norm() == 0.0);

  // field = g_k against DivSpace gives column k of the duality gram
  const Matrix P = duality_gram(X, Y);
  for (int k : {0, 17, 63}) {
    auto gk = [&](const Vec3& x, int t) -> CVec3 {
      const auto& ed = mesh->edge(k);
      if (t != ed.tri_plus && t != ed.tri_minus) return CVec3::Zero();
      return Y.basis(k, t, x).cast<Complex>();
    };
    const CVector col = project_onto_dual(X, gk, 6);
    for (int i = 0; i < X.dimension(); ++i) {
      CHECK(std::abs(col[i] - P(i, k)) <= 1e-12 * std::max(1.0, P.cwiseAbs().maxCoeff()));
    }
  }

  // tangential trace of a constant field vs adaptive per-panel oracle
  const Vec3 c(1.0, 0.0, 0.0);
  auto field = [&](const Vec3&, int t) -> CVec3 {
    const Vec3 n = mesh->normal(t);
    return (c - c.dot(n) * n).cast<Complex>();
  };
  const CVector b = project_onto_dual(X, field, 6);
  for (int e : {0, 5, 40, 119}) {
    const auto& ed = mesh->edge(e);
    Complex ref(0, 0);
    for (int t : {ed.tri_plus, ed.tri_minus}) {
      std::array<Vec3, 3> tri = {mesh->triangle_vertex(t, 0),
                                 mesh->triangle_vertex(t, 1),
                                 mesh->triangle_vertex(t, 2)};
      const Vec3 n = mesh->normal(t);
      ref += oracle::integrate_triangle_adaptive(
          tri,
          [&](const Vec3& x) {
            return Complex((c - c.dot(n) * n).dot(X.basis(e, t, x)), 0.0);
          },
          1e-12);
    }
    CHECK(std::abs(b[e] - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
  }
}
