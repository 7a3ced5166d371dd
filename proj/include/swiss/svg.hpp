#pragma once

#include <string>

#include "swiss/geometry.hpp"

namespace swiss {

// Unit circle stroked, deleted discs filled, annulus guide circles dashed.
// viewBox [-1.05, -1.05] x [2.1, 2.1]; byte-deterministic for equal inputs.
std::string render_cheese_svg(const SwissCheese& cheese);

}  // namespace swiss
