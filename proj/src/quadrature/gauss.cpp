// SPDX-License-Identifier: Apache-2.0

#include "mxbem/quadrature/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace mxbem {

namespace {

Gauss1D compute_gauss(int n) {
  // Newton iteration on Legendre polynomials over [-1,1], then map to [0,1].
  Gauss1D rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.x[i] = 0.5 * (1.0 - x);  // descending cos order -> ascending on [0,1]
    rule.w[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::map<int, Gauss1D> g_cache;
std::mutex g_mutex;

}  // namespace

const Gauss1D& gauss_legendre_01(int n) {
  if (n < 1 || n > 64) throw MxError("gauss_legendre_01: order out of range");
  std::lock_guard<std::mutex> lock(g_mutex);
  auto it = g_cache.find(n);
  if (it == g_cache.end()) it = g_cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

std::vector<TriPoint> triangle_rule(int degree) {
  // Collapsed (Duffy) tensor rule: x1 = u, x2 = u v, Jacobian u. A total
  // degree-d polynomial becomes degree <= 2d+1 in u and d in v, so q = d+1
  // Gauss points per direction are exact.
  const int q = std::max(1, degree + 1);
  const Gauss1D& g = gauss_legendre_01(q);
  std::vector<TriPoint> pts;
  pts.reserve(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      TriPoint p;
      p.x1 = g.x[i];
      p.x2 = g.x[i] * g.x[j];
      p.w = g.w[i] * g.w[j] * g.x[i];
      pts.push_back(p);
    }
  }
  return pts;
}

}  // namespace mxbem
