// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_QUADRATURE_PAIR_RULES_HPP
#define MXBEM_QUADRATURE_PAIR_RULES_HPP

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "mxbem/core/types.hpp"
#include "mxbem/geometry/mesh.hpp"
#include "mxbem/quadrature/gauss.hpp"

namespace mxbem {

enum class PanelPairClass { disjoint, common_vertex, common_edge, identical };

const char* to_string(PanelPairClass c);

/// Flat panel with global vertex ids, as consumed by pair integration.
struct Panel {
  std::array<Vec3, 3> v;
  std::array<int, 3> gid;
  int index = -1;  // triangle index in the owning mesh, -1 for ad-hoc panels

  static Panel from_mesh(const SurfaceMesh& mesh, int t);
  double area() const {
    return 0.5 * (v[1] - v[0]).cross(v[2] - v[0]).norm();
  }
  Vec3 unit_normal() const {
    return (v[1] - v[0]).cross(v[2] - v[0]).normalized();
  }
};

/// Tensorized quadrature for a panel pair. Points are reference
/// coordinates on {0 <= x2 <= x1 <= 1} for each panel, stored SoA. For
/// the constant kernel the weights sum to 1/4; the physical integral
/// carries the extra 4*areaA*areaB Jacobian.
struct PairRule {
  PanelPairClass cls;
  int order = 0;
  std::vector<double> a1, a2, b1, b2, w;
  std::size_t size() const { return w.size(); }
};

/// Classification depends only on the number of shared global vertex ids.
PanelPairClass classify_pair(const Panel& a, const Panel& b);

/// Regularized tensor rule for a pair class; q Gauss points per
/// dimension, 1 <= q <= 12. Singular classes assume panels canonicalized
/// by canonicalize_pair.
std::shared_ptr<const PairRule> pair_rule(PanelPairClass cls, int q);

/// Reorders panel vertices so shared entities come first, in a canonical
/// order determined by global vertex ids (deterministic under relabeling):
///  - common_vertex:  a = (s, ., .), b = (s, ., .)
///  - common_edge:    a = (p, q, *), b = (p, q, *) with p < q
/// Disjoint and identical pairs are returned unchanged.
std::pair<Panel, Panel> canonicalize_pair(const Panel& a, const Panel& b,
                                          PanelPairClass cls);

/// Integrates kernel(x,y) over the panel pair with the given rule.
/// Canonicalization is applied internally for singular classes. Throws
/// MxError on non-finite kernel values (reports panel indices).
Complex integrate_pair(const Panel& a, const Panel& b,
                       const std::function<Complex(const Vec3&, const Vec3&)>& kernel,
                       const PairRule& rule);

/// Quadrature configuration for Galerkin assembly.
struct QuadConfig {
  int disjoint_order = 4;
  int singular_order = 6;   // common vertex / common edge
  int identical_order = 8;
  double near_threshold = 1.0;  // in units of max panel h
  int near_boost = 4;           // order increment for near pairs
  bool auto_oscillatory = true; // grow disjoint order with |shat| h
};

}  // namespace mxbem

#endif
