// SPDX-License-Identifier: Apache-2.0

#include "mxbem/quadrature/pair_rules.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace mxbem {

const char* to_string(PanelPairClass c) {
  switch (c) {
    case PanelPairClass::disjoint: return "disjoint";
    case PanelPairClass::common_vertex: return "common_vertex";
    case PanelPairClass::common_edge: return "common_edge";
    case PanelPairClass::identical: return "identical";
  }
  return "?";
}

Panel Panel::from_mesh(const SurfaceMesh& mesh, int t) {
  Panel p;
  const auto& tri = mesh.triangle(t);
  for (int k = 0; k < 3; ++k) {
    p.v[k] = mesh.vertex(tri[k]);
    p.gid[k] = tri[k];
  }
  p.index = t;
  return p;
}

PanelPairClass classify_pair(const Panel& a, const Panel& b) {
  int shared = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (a.gid[i] == b.gid[j]) ++shared;
    }
  }
  switch (shared) {
    case 0: return PanelPairClass::disjoint;
    case 1: return PanelPairClass::common_vertex;
    case 2: return PanelPairClass::common_edge;
    case 3: return PanelPairClass::identical;
    default: throw MxError("classify_pair: invalid shared vertex count");
  }
}

namespace {

Panel permute(const Panel& p, std::array<int, 3> order) {
  Panel q = p;
  for (int k = 0; k < 3; ++k) {
    q.v[k] = p.v[order[k]];
    q.gid[k] = p.gid[order[k]];
  }
  return q;
}

std::array<int, 3> order_with_first(const Panel& p, int gid_first) {
  std::array<int, 3> rest{};
  int n = 0, first = -1;
  for (int k = 0; k < 3; ++k) {
    if (p.gid[k] == gid_first) {
      first = k;
    } else {
      rest[n++] = k;
    }
  }
  if (p.gid[rest[0]] > p.gid[rest[1]]) std::swap(rest[0], rest[1]);
  return {first, rest[0], rest[1]};
}

std::array<int, 3> order_with_edge(const Panel& p, int gid_p, int gid_q) {
  std::array<int, 3> o{-1, -1, -1};
  for (int k = 0; k < 3; ++k) {
    if (p.gid[k] == gid_p) o[0] = k;
    else if (p.gid[k] == gid_q) o[1] = k;
    else o[2] = k;
  }
  return o;
}

// Appends one quadrature point per panel-pair evaluation.
struct RuleBuilder {
  PairRule rule;
  void add(double xa1, double xa2, double xb1, double xb2, double weight) {
    rule.a1.push_back(xa1);
    rule.a2.push_back(xa2);
    rule.b1.push_back(xb1);
    rule.b2.push_back(xb2);
    rule.w.push_back(weight);
  }
};

PairRule build_disjoint(int q) {
  const Gauss1D& g = gauss_legendre_01(q);
  RuleBuilder rb;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l) {
          const double u1 = g.x[i], u2 = g.x[j], v1 = g.x[k], v2 = g.x[l];
          const double w = g.w[i] * g.w[j] * g.w[k] * g.w[l] * u1 * v1;
          rb.add(u1, u1 * u2, v1, v1 * v2, w);
        }
  return std::move(rb.rule);
}

// Shared vertex at local 0 of both panels. Joint radial scaling about the
// singular corner; two subdomains by which panel carries the larger radius.
PairRule build_vertex(int q) {
  // The radial direction is nearly polynomial after the transform; the
  // angular directions carry the kernel's analytic structure and get two
  // extra points.
  const Gauss1D& g = gauss_legendre_01(q);
  const Gauss1D& ga = gauss_legendre_01(q + 2);
  RuleBuilder rb;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q + 2; ++j)
      for (int k = 0; k < q + 2; ++k)
        for (int l = 0; l < q + 2; ++l) {
          const double rho = g.x[i], e1 = ga.x[j], e2 = ga.x[k], e3 = ga.x[l];
          const double w =
              g.w[i] * ga.w[j] * ga.w[k] * ga.w[l] * rho * rho * rho * e2;
          rb.add(rho, rho * e1, rho * e2, rho * e2 * e3, w);
          rb.add(rho * e2, rho * e2 * e3, rho, rho * e1, w);
        }
  return std::move(rb.rule);
}

// Shared edge at local (0,1) of both panels. Relative coordinates
// (x1-y1, x2, y2) are scaled jointly; the cone splits into three
// simplicial pieces plus their panel-swapped mirrors.
PairRule build_edge(int q) {
  const Gauss1D& g = gauss_legendre_01(q);
  const Gauss1D& ga = gauss_legendre_01(q + 2);
  RuleBuilder rb;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q + 2; ++j)
      for (int k = 0; k < q + 2; ++k)
        for (int l = 0; l < q; ++l) {
          const double rho = g.x[i], e1 = ga.x[j], e2 = ga.x[k], t = g.x[l];
          const double w =
              g.w[i] * ga.w[j] * ga.w[k] * g.w[l] * rho * rho * e1 * (1.0 - rho);
          const double x1 = rho + t * (1.0 - rho);
          // e1-type: x2 dominates.
          {
            const double x2 = rho;
            const double y1 = x1 - rho * e1 * (1.0 - e2);
            const double y2 = rho * e1 * e2;
            rb.add(x1, x2, y1, y2, w);
            rb.add(y1, y2, x1, x2, w);
          }
          // e2a-type: the edge offset dominates.
          {
            const double x2 = rho * e1 * (1.0 - e2);
            const double y1 = rho * e1 * e2 + t * (1.0 - rho);
            const double y2 = rho * e1 * e2;
            rb.add(x1, x2, y1, y2, w);
            rb.add(y1, y2, x1, x2, w);
          }
          // e2b-type: intermediate.
          {
            const double x2 = rho * e1;
            const double y1 = rho * (1.0 - e1 * e2) + t * (1.0 - rho);
            const double y2 = rho * (1.0 - e1 * e2);
            rb.add(x1, x2, y1, y2, w);
            rb.add(y1, y2, x1, x2, w);
          }
        }
  return std::move(rb.rule);
}

// Identical panels. Relative coordinate over three hexagon cones plus the
// symmetrized (swapped) evaluations.
PairRule build_identical(int q) {
  const Gauss1D& g = gauss_legendre_01(q);
  const Gauss1D& ga = gauss_legendre_01(q + 2);
  RuleBuilder rb;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q + 2; ++j)
      for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l) {
          const double xi = g.x[i], eta = ga.x[j], w1 = g.x[k], w2 = g.x[l];
          const double w = g.w[i] * ga.w[j] * g.w[k] * g.w[l] * xi *
                           (1.0 - xi) * (1.0 - xi) * w1;
          const double a = w1 * (1.0 - xi);
          const double ab = a * w2;
          // cone 1: z = (xi, xi*eta)
          rb.add(xi + a, xi * eta + ab, a, ab, w);
          rb.add(a, ab, xi + a, xi * eta + ab, w);
          // cone 2: z = (xi*eta, xi)
          rb.add(xi + a, xi + ab, xi * (1.0 - eta) + a, ab, w);
          rb.add(xi * (1.0 - eta) + a, ab, xi + a, xi + ab, w);
          // cone 3: z = (-xi*(1-eta), xi*eta)
          rb.add(xi * eta + a, xi * eta + ab, xi + a, ab, w);
          rb.add(xi + a, ab, xi * eta + a, xi * eta + ab, w);
        }
  return std::move(rb.rule);
}

std::map<std::pair<PanelPairClass, int>, std::shared_ptr<const PairRule>> g_rules;
std::mutex g_rules_mutex;

}  // namespace

std::shared_ptr<const PairRule> pair_rule(PanelPairClass cls, int q) {
  if (q < 1 || q > 12) {
    throw MxError("pair_rule: unsupported order " + std::to_string(q));
  }
  std::lock_guard<std::mutex> lock(g_rules_mutex);
  auto key = std::make_pair(cls, q);
  auto it = g_rules.find(key);
  if (it != g_rules.end()) return it->second;

  PairRule rule;
  switch (cls) {
    case PanelPairClass::disjoint: rule = build_disjoint(q); break;
    case PanelPairClass::common_vertex: rule = build_vertex(q); break;
    case PanelPairClass::common_edge: rule = build_edge(q); break;
    case PanelPairClass::identical: rule = build_identical(q); break;
  }
  rule.cls = cls;
  rule.order = q;
  auto ptr = std::make_shared<const PairRule>(std::move(rule));
  g_rules.emplace(key, ptr);
  return ptr;
}

std::pair<Panel, Panel> canonicalize_pair(const Panel& a, const Panel& b,
                                          PanelPairClass cls) {
  switch (cls) {
    case PanelPairClass::disjoint:
    case PanelPairClass::identical:
      return {a, b};
    case PanelPairClass::common_vertex: {
      int shared = -1;
      for (int i = 0; i < 3 && shared < 0; ++i)
        for (int j = 0; j < 3; ++j)
          if (a.gid[i] == b.gid[j]) {
            shared = a.gid[i];
            break;
          }
      return {permute(a, order_with_first(a, shared)),
              permute(b, order_with_first(b, shared))};
    }
    case PanelPairClass::common_edge: {
      int p = -1, q = -1;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (a.gid[i] == b.gid[j]) {
            if (p < 0) p = a.gid[i];
            else if (a.gid[i] != p) q = a.gid[i];
          }
      if (p > q) std::swap(p, q);
      return {permute(a, order_with_edge(a, p, q)),
              permute(b, order_with_edge(b, p, q))};
    }
  }
  throw MxError("canonicalize_pair: unreachable");
}

Complex integrate_pair(const Panel& a, const Panel& b,
                       const std::function<Complex(const Vec3&, const Vec3&)>& kernel,
                       const PairRule& rule) {
  auto [pa, pb] = canonicalize_pair(a, b, rule.cls);
  const double jac = 4.0 * pa.area() * pb.area();
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Vec3 x = map_triangle(pa.v[0], pa.v[1], pa.v[2], rule.a1[k], rule.a2[k]);
    const Vec3 y = map_triangle(pb.v[0], pb.v[1], pb.v[2], rule.b1[k], rule.b2[k]);
    const Complex val = kernel(x, y);
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) {
      throw MxError("integrate_pair: non-finite kernel value on panels (" +
                    std::to_string(a.index) + "," + std::to_string(b.index) + ")");
    }
    acc += rule.w[k] * val;
  }
  return jac * acc;
}

}  // namespace mxbem
