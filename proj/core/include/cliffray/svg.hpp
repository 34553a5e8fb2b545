#pragma once

#include <string>

#include "cliffray/phase_quad.hpp"

namespace cliffray {

// Static rendering of an object rectangle and its image parallelogram in a
// shared phase plane: y-up, axes through the origin with labels taken from
// the space tag, one polygon per quad, coordinate scale declared in <desc>.
// Both quads must carry the same space tag.
std::string svg_quad_pair(const PhaseQuad& object, const PhaseQuad& image);

}  // namespace cliffray
