#pragma once

#include <string_view>

#include "camedit/image.hpp"

namespace camedit::refine {

enum class MorphOrder {
    close,  // dilate then erode
    open,   // erode then dilate
    none,
};

MorphOrder parse_morph_order(std::string_view text);
std::string_view to_string(MorphOrder order);

struct RefineConfig {
    int median_kernel = 5;
    double binarize_threshold = 0.7;
    MorphOrder morph_order = MorphOrder::close;
};

/// size x size median with replicate padding. Size must be odd; 1 is the identity.
ImagePlane median_filter(const ImagePlane& img, int size);

/// Edge where value >= threshold.
BinaryEdgeMap binarize(const ImagePlane& membership, double threshold);

/// 3x3 square structuring element. Pixels outside the raster count as background.
BinaryEdgeMap dilate(const BinaryEdgeMap& map);
BinaryEdgeMap erode(const BinaryEdgeMap& map);

BinaryEdgeMap close(const BinaryEdgeMap& map);
BinaryEdgeMap open(const BinaryEdgeMap& map);

/// median_filter -> binarize -> morphology in cfg.morph_order.
BinaryEdgeMap refine(const ImagePlane& membership, const RefineConfig& cfg);

}  // namespace camedit::refine
