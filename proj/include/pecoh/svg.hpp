#pragma once

#include "pecoh/patch.hpp"

#include <string>

namespace pecoh {

/// Static SVG of a patch. 1D: labeled unit segments; 2D: unit squares with
/// one fixed color per label, y pointing up.
std::string render_svg(const SubstitutionRule& rule, const Patch& patch);

} // namespace pecoh
