// SPDX-License-Identifier: Apache-2.0

#include "mxbem/operators/assemble.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <mutex>
#include <vector>

#include "mxbem/kernels/yukawa.hpp"
#include "mxbem/util/parallel.hpp"

namespace mxbem {

namespace {

struct EdgeBasis {
  double c = 0.0;  // f(x) = c (x - p)
  Vec3 p = Vec3::Zero();
  double div = 0.0;
  int edge = -1;
};

EdgeBasis edge_basis(const DivSpace& X, int e, int t) {
  const MeshEdge& edge = X.mesh().edge(e);
  EdgeBasis b;
  const int opp = (t == edge.tri_plus) ? edge.opp_plus : edge.opp_minus;
  b.p = X.mesh().vertex(opp);
  b.c = X.sign(e, t) * edge.length / (2.0 * X.mesh().area(t));
  b.div = 2.0 * b.c;
  b.edge = e;
  return b;
}

// Scratch buffers reused across panel pairs.
struct Workspace {
  std::vector<double> dx, dy, dz, w;
  std::vector<Vec3> xs, ys;
  std::vector<Complex> g, f;
  void resize(std::size_t n) {
    dx.resize(n); dy.resize(n); dz.resize(n); w.resize(n);
    xs.resize(n); ys.resize(n);
    g.resize(n); f.resize(n);
  }
};

// 3x3 complex blocks for the four operators on one ordered panel pair.
struct PairBlocks {
  Complex V[9], K[9], Kt[9], Vt[9];
  void clear() {
    for (int k = 0; k < 9; ++k) V[k] = K[k] = Kt[k] = Vt[k] = Complex(0, 0);
  }
};

int effective_order(PanelPairClass cls, const QuadConfig& quad, double gap,
                    double h_pair, double abs_shat) {
  int q;
  switch (cls) {
    case PanelPairClass::disjoint: q = quad.disjoint_order; break;
    case PanelPairClass::identical: q = quad.identical_order; break;
    default: q = quad.singular_order; break;
  }
  if (cls == PanelPairClass::disjoint && gap < quad.near_threshold * h_pair) {
    q += quad.near_boost;
  }
  if (quad.auto_oscillatory) {
    q += static_cast<int>(std::min(6.0, std::floor(abs_shat * h_pair / 3.0)));
  }
  return std::min(q, 12);
}

void assemble_pair(const DivSpace& X, int ta, int tb, Complex shat,
                   const QuadConfig& quad, Workspace& ws, PairBlocks& out) {
  const SurfaceMesh& mesh = X.mesh();
  out.clear();

  Panel pa = Panel::from_mesh(mesh, ta);
  Panel pb = Panel::from_mesh(mesh, tb);
  const PanelPairClass cls = classify_pair(pa, pb);

  const double h_pair = std::max(mesh.h(ta), mesh.h(tb));
  double gap = 0.0;
  if (cls == PanelPairClass::disjoint) {
    auto rad = [&](int t) {
      double r = 0.0;
      for (int k = 0; k < 3; ++k)
        r = std::max(r, (mesh.triangle_vertex(t, k) - mesh.centroid(t)).norm());
      return r;
    };
    gap = (mesh.centroid(ta) - mesh.centroid(tb)).norm() - rad(ta) - rad(tb);
  }
  const int q = effective_order(cls, quad, gap, h_pair, std::abs(shat));
  const auto rule = pair_rule(cls, q);
  auto [ca_panel, cb_panel] = canonicalize_pair(pa, pb, cls);

  const std::size_t n = rule->size();
  ws.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 x = map_triangle(ca_panel.v[0], ca_panel.v[1], ca_panel.v[2],
                                rule->a1[k], rule->a2[k]);
    const Vec3 y = map_triangle(cb_panel.v[0], cb_panel.v[1], cb_panel.v[2],
                                rule->b1[k], rule->b2[k]);
    ws.xs[k] = x;
    ws.ys[k] = y;
    ws.dx[k] = x.x() - y.x();
    ws.dy[k] = x.y() - y.y();
    ws.dz[k] = x.z() - y.z();
    ws.w[k] = rule->w[k];
  }

  yukawa_gf_batch(shat, ws.dx.data(), ws.dy.data(), ws.dz.data(), ws.w.data(), n,
                  ws.g.data(), ws.f.data());

  EdgeBasis ba[3], bb[3];
  for (int k = 0; k < 3; ++k) {
    ba[k] = edge_basis(X, mesh.triangle_edges(ta)[k], ta);
    bb[k] = edge_basis(X, mesh.triangle_edges(tb)[k], tb);
  }
  const Vec3 nA = mesh.normal(ta);
  const Complex s2 = shat * shat;
  const bool identical = (cls == PanelPairClass::identical);

  // Per-combo precomputation for the K shortcut
  //   (x-p).((x-y) x (y-q)) = (q-p).(x cross y) + (x-y).(q cross p).
  Vec3 qmp[9], qxp[9];
  double cc[9], dd[9];
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const int k = 3 * a + b;
      qmp[k] = bb[b].p - ba[a].p;
      qxp[k] = bb[b].p.cross(ba[a].p);
      cc[k] = ba[a].c * bb[b].c;
      dd[k] = ba[a].div * bb[b].div;
    }
  }

  for (std::size_t pt = 0; pt < n; ++pt) {
    const Vec3& x = ws.xs[pt];
    const Vec3& y = ws.ys[pt];
    const Vec3 d(ws.dx[pt], ws.dy[pt], ws.dz[pt]);
    const Complex gk = ws.g[pt];
    const Complex fk = ws.f[pt];

    const double dxy = x.dot(y);
    const Vec3 cxy = x.cross(y);
    Vec3 u[3];  // nA x (x - p_a), the rotated test vectors (unscaled)
    double py[3], uy[3], ud[3];
    for (int a = 0; a < 3; ++a) {
      u[a] = nA.cross(Vec3(x - ba[a].p));
      py[a] = ba[a].p.dot(y);
      uy[a] = u[a].dot(y);
      ud[a] = u[a].dot(d);
    }
    double xq[3];
    Vec3 e[3];  // cxy - d x q_b
    for (int b = 0; b < 3; ++b) {
      xq[b] = x.dot(bb[b].p);
      e[b] = cxy - d.cross(bb[b].p);
    }

    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const int k = 3 * a + b;
        const double ff = dxy - xq[b] - py[a] + ba[a].p.dot(bb[b].p);
        out.V[k] -= (s2 * (cc[k] * ff) + dd[k]) * gk;
        if (!identical) {
          const double T = qmp[k].dot(cxy) + d.dot(qxp[k]);
          out.K[k] += cc[k] * T * fk;
          out.Kt[k] += cc[k] * u[a].dot(e[b]) * fk;
        }
        // Vtilde = -<g_i, V f_j>; the sign is folded in here. Its gradient
        // part cancels pairwise on identical panels (symmetrized rule).
        const double gafb = cc[k] * (uy[a] - u[a].dot(bb[b].p));
        out.Vt[k] += -bb[b].div * (ba[a].c * ud[a]) * fk + s2 * gafb * gk;
      }
    }
  }

  const double jac = 4.0 * pa.area() * pb.area();
  for (int k = 0; k < 9; ++k) {
    out.V[k] *= jac;
    out.K[k] *= jac;
    out.Kt[k] *= jac;
    out.Vt[k] *= jac;
  }
}

struct CacheKey {
  std::uint64_t mesh_id;
  char shat[48];
  char quad[64];
  bool operator<(const CacheKey& o) const {
    if (mesh_id != o.mesh_id) return mesh_id < o.mesh_id;
    const int c = std::memcmp(shat, o.shat, sizeof(shat));
    if (c != 0) return c < 0;
    return std::memcmp(quad, o.quad, sizeof(quad)) < 0;
  }
};

CacheKey make_key(std::uint64_t mesh_id, Complex shat, const QuadConfig& q) {
  CacheKey key{};
  key.mesh_id = mesh_id;
  std::snprintf(key.shat, sizeof(key.shat), "%.15e_%.15e", shat.real(), shat.imag());
  std::snprintf(key.quad, sizeof(key.quad), "%d_%d_%d_%.6g_%d_%d", q.disjoint_order,
                q.singular_order, q.identical_order, q.near_threshold, q.near_boost,
                q.auto_oscillatory ? 1 : 0);
  return key;
}

std::map<CacheKey, std::shared_ptr<const OperatorSet>> g_cache;
std::mutex g_cache_mutex;

}  // namespace

std::shared_ptr<const OperatorSet> assemble_operators(const DivSpace& X, Complex shat,
                                                      const QuadConfig& quad,
                                                      int threads) {
  const CacheKey key = make_key(X.mesh().id(), shat, quad);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }

  const SurfaceMesh& mesh = X.mesh();
  const int nt = mesh.num_triangles();
  const int dim = X.dimension();

  auto set = std::make_shared<OperatorSet>();
  set->shat = shat;
  set->mesh_id = mesh.id();
  set->V = CMatrix::Zero(dim, dim);
  set->K = CMatrix::Zero(dim, dim);
  set->Ktilde = CMatrix::Zero(dim, dim);
  set->Vtilde = CMatrix::Zero(dim, dim);

  // One chunk per test panel: workers fill disjoint chunk buffers, the
  // reduction below runs in fixed panel order (deterministic results).
  std::vector<std::vector<PairBlocks>> chunks(nt);
  parallel_for_blocked(nt, threads, [&](std::size_t b, std::size_t e) {
    Workspace ws;
    for (std::size_t ta = b; ta < e; ++ta) {
      auto& row = chunks[ta];
      row.resize(nt);
      for (int tb = 0; tb < nt; ++tb) {
        assemble_pair(X, static_cast<int>(ta), tb, shat, quad, ws, row[tb]);
      }
    }
  });

  for (int ta = 0; ta < nt; ++ta) {
    for (int tb = 0; tb < nt; ++tb) {
      const PairBlocks& blk = chunks[ta][tb];
      for (int a = 0; a < 3; ++a) {
        const int i = mesh.triangle_edges(ta)[a];
        for (int b = 0; b < 3; ++b) {
          const int j = mesh.triangle_edges(tb)[b];
          const int k = 3 * a + b;
          set->V(i, j) += blk.V[k];
          set->K(i, j) += blk.K[k];
          set->Ktilde(i, j) += blk.Kt[k];
          set->Vtilde(i, j) += blk.Vt[k];
        }
      }
    }
    chunks[ta].clear();
    chunks[ta].shrink_to_fit();
  }

  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = g_cache.emplace(key, set);
  return it->second;
}

CMatrix assemble_operator(const DivSpace& X, OperatorTag tag, Complex shat,
                          const QuadConfig& quad) {
  auto set = assemble_operators(X, shat, quad);
  switch (tag) {
    case OperatorTag::V: return set->V;
    case OperatorTag::K: return set->K;
    case OperatorTag::Ktilde: return set->Ktilde;
    case OperatorTag::Vtilde: return set->Vtilde;
  }
  throw MxError("assemble_operator: bad tag");
}

void clear_operator_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  g_cache.clear();
}

std::size_t operator_cache_size() {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_cache.size();
}

}  // namespace mxbem
