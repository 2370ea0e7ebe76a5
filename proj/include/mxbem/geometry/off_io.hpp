// SPDX-License-Identifier: Apache-2.0

#ifndef MXBEM_GEOMETRY_OFF_IO_HPP
#define MXBEM_GEOMETRY_OFF_IO_HPP

#include <string>

#include "mxbem/geometry/mesh.hpp"

namespace mxbem {

/// Reads an ASCII OFF file: "OFF", counts line "V F E", V vertex lines,
/// F face lines "3 i j k". Lines starting with '#' and blank lines are
/// skipped. Parse and mesh-invariant failures throw MeshError with the
/// offending line or entity.
SurfaceMesh load_mesh(const std::string& path);

/// Writes ASCII OFF with 17 significant digits per coordinate.
void save_mesh(const SurfaceMesh& mesh, const std::string& path);

}  // namespace mxbem

#endif
