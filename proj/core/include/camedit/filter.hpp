#pragma once

#include <array>

#include "camedit/image.hpp"

namespace camedit {

using Kernel3 = std::array<std::array<double, 3>, 3>;
using Kernel2 = std::array<std::array<double, 2>, 2>;

/// 3x3 correlation (no kernel flip) with replicate padding. kernel[row][col],
/// row 0 is the row above the output pixel.
ImagePlane correlate3x3(const ImagePlane& img, const Kernel3& kernel);

/// 2x2 correlation anchored at the top-left tap: out(x,y) sums rows y..y+1, columns x..x+1.
ImagePlane correlate2x2(const ImagePlane& img, const Kernel2& kernel);

}  // namespace camedit
