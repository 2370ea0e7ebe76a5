// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_OPERATORS_TAGS_HPP
#define MXBEM_OPERATORS_TAGS_HPP

namespace mxbem {

/// The four boundary-operator Galerkin matrices. Row/column conventions,
/// with f the div-conforming basis and g = n x f its rotation:
///   V       <f_i, V f_j>       = -II G [shat^2 f_i.f_j + div f_i div f_j]
///   K       <g_i, K f_j>       =  II f_i . (grad_x G x f_j)
///   Ktilde  <f_i, Ktilde g_j>  =  II g_i . (grad_x G x f_j)
///   Vtilde  <g_i, Vtilde g_j>  = -II (g_i . grad_x G) div f_j
///                                + shat^2 II G g_i . f_j
/// All pairings are bilinear; the tilde operators act on rotated densities
/// through n x g = -f.
enum class OperatorTag { V, K, Ktilde, Vtilde };

inline const char* to_string(OperatorTag t) {
  switch (t) {
    case OperatorTag::V: return "V";
    case OperatorTag::K: return "K";
    case OperatorTag::Ktilde: return "Ktilde";
    case OperatorTag::Vtilde: return "Vtilde";
  }
  return "?";
}

}  // namespace mxbem

#endif
