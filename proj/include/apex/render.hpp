#pragma once
#include <string>

#include "apex/complex.hpp"
#include "apex/support.hpp"

namespace apex {

// SVG picture of the windowed complex (rank 1 and 2 only; throws above that).
// With a cell given, shades its cone hull, highlights the support subcomplex,
// outlines the cell, and labels the chain coefficients at cell barycenters.
std::string render_svg(const CellComplex& cx, int sigma = -1, const Support* sup = nullptr,
                       const Chain* chain = nullptr);

}  // namespace apex
