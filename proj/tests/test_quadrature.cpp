// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "mxbem/geometry/mesh.hpp"
#include "mxbem/oracle/pair_oracle.hpp"
#include "mxbem/quadrature/gauss.hpp"
#include "mxbem/quadrature/pair_rules.hpp"

using namespace mxbem;

namespace {

Panel make_panel(Vec3 a, Vec3 b, Vec3 c, std::array<int, 3> gid, int index = -1) {
  Panel p;
  p.v = {a, b, c};
  p.gid = gid;
  p.index = index;
  return p;
}

// Unit right triangle in the plane and a disjoint partner.
const Panel kTriA = make_panel({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 2});
const Panel kTriFar = make_panel({3, 0, 1}, {4, 0, 1}, {3, 1, 1}, {10, 11, 12});
// Shares edge (0,1) with kTriA, folded out of plane.
const Panel kTriEdge = make_panel({1, 0, 0}, {0, 0, 0}, {0.2, -0.7, 0.6}, {1, 0, 5});
// Shares only vertex 0.
const Panel kTriVert = make_panel({0, 0, 0}, {-1, -0.2, 0.3}, {-0.4, -1, -0.5}, {0, 7, 8});

}  // namespace

TEST_CASE("gauss rules integrate polynomials exactly") {
  for (int n : {1, 2, 4, 8, 12}) {
    const auto& g = gauss_legendre_01(n);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += g.w[i];
      sum2 += g.w[i] * std::pow(g.x[i], 2 * n - 1);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sum2 == doctest::Approx(1.0 / (2.0 * n)).epsilon(1e-12));
  }
  // triangle rule: exact for x^d y, area = 1/2
  const auto tr = triangle_rule(3);
  double area = 0.0, moment = 0.0;
  for (const auto& qp : tr) {
    area += qp.w;
    moment += qp.w * qp.x1 * qp.x1 * qp.x2;
  }
  CHECK(area == doctest::Approx(0.5).epsilon(1e-14));
  // int over {0<=x2<=x1<=1} of x1^2 x2 = int x1^2 * x1^2/2 = 1/10
  CHECK(moment == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("pair classification by shared vertex count") {
  CHECK(classify_pair(kTriA, kTriA) == PanelPairClass::identical);
  CHECK(classify_pair(kTriA, kTriEdge) == PanelPairClass::common_edge);
  CHECK(classify_pair(kTriA, kTriVert) == PanelPairClass::common_vertex);
  CHECK(classify_pair(kTriA, kTriFar) == PanelPairClass::disjoint);
}

TEST_CASE("rules have positive weights summing to 1/4 and O(q^4) points") {
  for (auto cls : {PanelPairClass::disjoint, PanelPairClass::common_vertex,
                   PanelPairClass::common_edge, PanelPairClass::identical}) {
    for (int q : {2, 4, 6}) {
      const auto rule = pair_rule(cls, q);
      double sum = 0.0;
      for (double w : rule->w) {
        CHECK(w > 0.0);
        sum += w;
      }
      CHECK(sum == doctest::Approx(0.25).epsilon(1e-13));
      // O(q^4): between q^4 and 6 q (q+2)^3 (angular dims carry 2 extra pts)
      const std::size_t q4 = static_cast<std::size_t>(q) * q * q * q;
      const std::size_t qa = static_cast<std::size_t>(q + 2);
      CHECK(rule->size() >= q4);
      CHECK(rule->size() <= 6 * q * qa * qa * qa);
    }
  }
  CHECK_THROWS_AS(pair_rule(PanelPairClass::disjoint, 13), MxError);
  CHECK_THROWS_AS(pair_rule(PanelPairClass::disjoint, 0), MxError);
}

TEST_CASE("constant kernel reproduces areaA*areaB for every class") {
  auto constant = [](const Vec3&, const Vec3&) { return Complex(1.0, 0.0); };
  const std::pair<Panel, Panel> pairs[] = {
      {kTriA, kTriFar}, {kTriA, kTriVert}, {kTriA, kTriEdge}, {kTriA, kTriA}};
  for (const auto& [a, b] : pairs) {
    const auto cls = classify_pair(a, b);
    const auto rule = pair_rule(cls, 5);
    const Complex got = integrate_pair(a, b, constant, *rule);
    const double expect = a.area() * b.area();
    CHECK(std::abs(got - expect) <= 1e-13 * expect);
  }
}

TEST_CASE("static kernel on the identical pair matches the oracle") {
  auto kernel = [](const Vec3& x, const Vec3& y) {
    return Complex(1.0 / (4.0 * kPi * (x - y).norm()), 0.0);
  };
  const Complex ref =
      oracle::yukawa_pair_oracle(kTriA.v, kTriA.v, Complex(0.0, 0.0), 1e-11);

  const Complex got8 = integrate_pair(kTriA, kTriA, kernel,
                                      *pair_rule(PanelPairClass::identical, 8));
  CHECK(std::abs(got8 - ref) <= 1e-7 * std::abs(ref));

  double prev_err = 1e9;
  for (int q : {2, 4, 6, 8}) {
    const Complex got = integrate_pair(kTriA, kTriA, kernel,
                                       *pair_rule(PanelPairClass::identical, q));
    const double err = std::abs(got - ref);
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("yukawa kernel on edge- and vertex-adjacent pairs converges to the oracle") {
  const Complex shat(1.0, 0.7);
  auto kernel = [&](const Vec3& x, const Vec3& y) {
    const double r = (x - y).norm();
    return std::exp(-shat * r) / (4.0 * kPi * r);
  };
  struct Case {
    Panel b;
    PanelPairClass cls;
  };
  const Case cases[] = {{kTriEdge, PanelPairClass::common_edge},
                        {kTriVert, PanelPairClass::common_vertex}};
  for (const auto& cs : cases) {
    const Complex ref = oracle::yukawa_pair_oracle(kTriA.v, cs.b.v, shat, 1e-11);
    double prev_err = 1e9;
    for (int q : {2, 4, 6, 8}) {
      const Complex got = integrate_pair(kTriA, cs.b, kernel, *pair_rule(cs.cls, q));
      const double err = std::abs(got - ref);
      CHECK(err < prev_err);
      prev_err = err;
    }
    CHECK(prev_err <= 5e-8 * std::abs(ref));
  }
}

TEST_CASE("disjoint yukawa pair agrees with a high-order tensor-Gauss reference") {
  const Complex shat(1.0, 0.0);
  auto kernel = [&](const Vec3& x, const Vec3& y) {
    const double r = (x - y).norm();
    return std::exp(-shat * r) / (4.0 * kPi * r);
  };
  const Panel far = make_panel({0, 0, 3}, {1, 0, 3}, {0, 1, 3}, {20, 21, 22});
  // Reference: plain tensor Gauss at q = 12 on each panel (Duffy-collapsed).
  const Complex ref = integrate_pair(kTriA, far, kernel,
                                     *pair_rule(PanelPairClass::disjoint, 12));
  const Complex got6 = integrate_pair(kTriA, far, kernel,
                                      *pair_rule(PanelPairClass::disjoint, 6));
  CHECK(std::abs(got6 - ref) <= 1e-10 * std::abs(ref));
  const Complex got4 = integrate_pair(kTriA, far, kernel,
                                      *pair_rule(PanelPairClass::disjoint, 4));
  CHECK(std::abs(got4 - ref) <= 1e-6 * std::abs(ref));

  const Complex oracle_ref = oracle::yukawa_pair_oracle(kTriA.v, far.v, shat, 1e-12);
  CHECK(std::abs(ref - oracle_ref) <= 1e-10 * std::abs(ref));
}

TEST_CASE("antisymmetric kernel vanishes on the identical pair") {
  const Vec3 t(0.3, 0.7, 0.0);
  auto kernel = [&](const Vec3& x, const Vec3& y) {
    return Complex((x - y).dot(t), 0.0);
  };
  const Complex got = integrate_pair(kTriA, kTriA, kernel,
                                     *pair_rule(PanelPairClass::identical, 6));
  CHECK(std::abs(got) <= 1e-14);
}

TEST_CASE("singular results invariant under vertex relabeling") {
  const Complex shat(1.0, 2.0);
  auto kernel = [&](const Vec3& x, const Vec3& y) {
    const double r = (x - y).norm();
    return std::exp(-shat * r) / (4.0 * kPi * r);
  };
  // Same geometric pair, rotated vertex lists.
  const Panel a2 = make_panel(kTriA.v[1], kTriA.v[2], kTriA.v[0], {1, 2, 0});
  const Panel b2 = make_panel(kTriEdge.v[2], kTriEdge.v[0], kTriEdge.v[1], {5, 1, 0});
  const auto rule = pair_rule(PanelPairClass::common_edge, 6);
  const Complex v1 = integrate_pair(kTriA, kTriEdge, kernel, *rule);
  const Complex v2 = integrate_pair(a2, b2, kernel, *rule);
  CHECK(std::abs(v1 - v2) <= 1e-12 * std::abs(v1));

  const Panel av = make_panel(kTriVert.v[2], kTriVert.v[0], kTriVert.v[1], {8, 0, 7});
  const auto vrule = pair_rule(PanelPairClass::common_vertex, 6);
  const Complex w1 = integrate_pair(kTriA, kTriVert, kernel, *vrule);
  const Complex w2 = integrate_pair(kTriA, av, kernel, *vrule);
  CHECK(std::abs(w1 - w2) <= 1e-12 * std::abs(w1));
}

TEST_CASE("non-finite kernel values are reported with panel indices") {
  auto bad = [](const Vec3&, const Vec3&) {
    return Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  };
  CHECK_THROWS_AS(integrate_pair(kTriA, kTriFar, bad,
                                 *pair_rule(PanelPairClass::disjoint, 2)),
                  MxError);
}
