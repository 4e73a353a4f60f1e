// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "convgeo/planar_rep.hpp"

namespace convgeo {

/// SVG picture of a planar representation: one group per element with the
/// inner polygon filled, the outer polygon dashed and the chosen body
/// stroked, plus the frame rays. Output is deterministic for fixed input.
std::string render_svg(const PlanarRepresentation& rep);

}  // namespace convgeo
