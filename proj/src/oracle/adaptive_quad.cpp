// SPDX-License-Identifier: Apache-2.0

#include "mxbem/oracle/adaptive_quad.hpp"

#include <cmath>
#include <queue>
#include <vector>

#include "mxbem/quadrature/gauss.hpp"

namespace mxbem::oracle {

namespace {

using Tri = std::array<Vec3, 3>;

double tri_area(const Tri& t) {
  return 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
}

double tri_diam(const Tri& t) {
  return std::max({(t[1] - t[0]).norm(), (t[2] - t[1]).norm(), (t[0] - t[2]).norm()});
}

std::array<Tri, 4> split4(const Tri& t) {
  const Vec3 m01 = 0.5 * (t[0] + t[1]);
  const Vec3 m12 = 0.5 * (t[1] + t[2]);
  const Vec3 m20 = 0.5 * (t[2] + t[0]);
  return {Tri{t[0], m01, m20}, Tri{t[1], m12, m01}, Tri{t[2], m20, m12},
          Tri{m01, m12, m20}};
}

// Greedy global refinement: cells live in a priority queue keyed by their
// embedded error estimate; the worst cell is split until the estimated
// total drops below the tolerance or the node budget is exhausted.

struct Cell {
  Tri a, b;        // b unused for single-triangle integration
  bool pair = false;
  int depth = 0;
  double err = 0.0;
  std::vector<Complex> fine;
};

struct CellOrder {
  bool operator()(const Cell& lhs, const Cell& rhs) const { return lhs.err < rhs.err; }
};

void eval_cell_tri(Cell& c, const MultiPointFn& f, int n,
                   const std::vector<TriPoint>& lo, const std::vector<TriPoint>& hi,
                   std::vector<Complex>& buf) {
  const double jac = 2.0 * tri_area(c.a);
  std::vector<Complex> coarse(n, Complex(0, 0));
  c.fine.assign(n, Complex(0, 0));
  for (const auto& qp : lo) {
    f(map_triangle(c.a[0], c.a[1], c.a[2], qp.x1, qp.x2), buf.data());
    for (int k = 0; k < n; ++k) coarse[k] += qp.w * buf[k];
  }
  for (const auto& qp : hi) {
    f(map_triangle(c.a[0], c.a[1], c.a[2], qp.x1, qp.x2), buf.data());
    for (int k = 0; k < n; ++k) c.fine[k] += qp.w * buf[k];
  }
  c.err = 0.0;
  for (int k = 0; k < n; ++k) {
    c.fine[k] *= jac;
    c.err += std::abs(c.fine[k] - jac * coarse[k]);
  }
}

// The two sides use staggered rule degrees so cell pairs on the diagonal
// of an identical panel never sample x == y exactly.
void eval_cell_pair(Cell& c, const MultiPairFn& f, int n,
                    const std::vector<TriPoint>& lo_a, const std::vector<TriPoint>& lo_b,
                    const std::vector<TriPoint>& hi_a, const std::vector<TriPoint>& hi_b,
                    std::vector<Complex>& buf) {
  const double jac = 4.0 * tri_area(c.a) * tri_area(c.b);
  std::vector<Complex> coarse(n, Complex(0, 0));
  c.fine.assign(n, Complex(0, 0));
  for (const auto& qa : lo_a) {
    const Vec3 x = map_triangle(c.a[0], c.a[1], c.a[2], qa.x1, qa.x2);
    for (const auto& qb : lo_b) {
      const Vec3 y = map_triangle(c.b[0], c.b[1], c.b[2], qb.x1, qb.x2);
      f(x, y, buf.data());
      for (int k = 0; k < n; ++k) coarse[k] += qa.w * qb.w * buf[k];
    }
  }
  for (const auto& qa : hi_a) {
    const Vec3 x = map_triangle(c.a[0], c.a[1], c.a[2], qa.x1, qa.x2);
    for (const auto& qb : hi_b) {
      const Vec3 y = map_triangle(c.b[0], c.b[1], c.b[2], qb.x1, qb.x2);
      f(x, y, buf.data());
      for (int k = 0; k < n; ++k) c.fine[k] += qa.w * qb.w * buf[k];
    }
  }
  c.err = 0.0;
  for (int k = 0; k < n; ++k) {
    c.fine[k] *= jac;
    c.err += std::abs(c.fine[k] - jac * coarse[k]);
  }
}

void run_greedy(Cell root, int n, Complex* out, double tol, int max_depth,
                std::size_t node_budget, const MultiPointFn* ftri,
                const MultiPairFn* fpair, const std::vector<TriPoint>& lo,
                const std::vector<TriPoint>& hi) {
  static const std::vector<TriPoint> lo_b = triangle_rule(4);
  static const std::vector<TriPoint> hi_b = triangle_rule(6);
  std::vector<Complex> buf(n);
  auto eval = [&](Cell& c) {
    if (c.pair) {
      eval_cell_pair(c, *fpair, n, lo, lo_b, hi, hi_b, buf);
    } else {
      eval_cell_tri(c, *ftri, n, lo, hi, buf);
    }
  };

  eval(root);
  std::priority_queue<Cell, std::vector<Cell>, CellOrder> active;
  std::vector<Complex> settled(n, Complex(0, 0));
  double active_err = root.err;
  active.push(std::move(root));
  std::size_t nodes = 1;

  while (active_err > tol && !active.empty() && nodes < node_budget) {
    Cell worst = active.top();
    active.pop();
    active_err -= worst.err;
    if (worst.depth >= max_depth) {
      for (int k = 0; k < n; ++k) settled[k] += worst.fine[k];
      continue;
    }
    const bool split_a = !worst.pair || tri_diam(worst.a) >= tri_diam(worst.b);
    const auto children = split4(split_a ? worst.a : worst.b);
    for (const auto& child : children) {
      Cell c;
      c.pair = worst.pair;
      c.depth = worst.depth + 1;
      c.a = split_a ? child : worst.a;
      c.b = split_a ? worst.b : child;
      eval(c);
      ++nodes;
      active_err += c.err;
      active.push(std::move(c));
    }
  }

  for (int k = 0; k < n; ++k) out[k] = settled[k];
  while (!active.empty()) {
    for (int k = 0; k < n; ++k) out[k] += active.top().fine[k];
    active.pop();
  }
}

}  // namespace

void integrate_triangle_adaptive_multi(const std::array<Vec3, 3>& tri,
                                       const MultiPointFn& f, int n_out, Complex* out,
                                       double tol, int max_depth) {
  static const std::vector<TriPoint> lo = triangle_rule(6);
  static const std::vector<TriPoint> hi = triangle_rule(10);
  Cell root;
  root.a = tri;
  root.pair = false;
  run_greedy(std::move(root), n_out, out, tol, max_depth, 120000, &f, nullptr, lo, hi);
}

void integrate_pair_adaptive_multi(const std::array<Vec3, 3>& tri_a,
                                   const std::array<Vec3, 3>& tri_b,
                                   const MultiPairFn& f, int n_out, Complex* out,
                                   double tol, int max_depth) {
  static const std::vector<TriPoint> lo = triangle_rule(3);
  static const std::vector<TriPoint> hi = triangle_rule(5);
  Cell root;
  root.a = tri_a;
  root.b = tri_b;
  root.pair = true;
  run_greedy(std::move(root), n_out, out, tol, max_depth, 40000, nullptr, &f, lo, hi);
}

Complex integrate_triangle_adaptive(const std::array<Vec3, 3>& tri,
                                    const std::function<Complex(const Vec3&)>& f,
                                    double tol, int max_depth) {
  Complex out;
  MultiPointFn wrap = [&](const Vec3& x, Complex* v) { v[0] = f(x); };
  integrate_triangle_adaptive_multi(tri, wrap, 1, &out, tol, max_depth);
  return out;
}

Complex integrate_pair_adaptive(const std::array<Vec3, 3>& tri_a,
                                const std::array<Vec3, 3>& tri_b,
                                const std::function<Complex(const Vec3&, const Vec3&)>& f,
                                double tol, int max_depth) {
  Complex out;
  MultiPairFn wrap = [&](const Vec3& x, const Vec3& y, Complex* v) { v[0] = f(x, y); };
  integrate_pair_adaptive_multi(tri_a, tri_b, wrap, 1, &out, tol, max_depth);
  return out;
}

}  // namespace mxbem::oracle
