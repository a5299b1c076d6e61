#include "camedit/refine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace camedit::refine {

MorphOrder parse_morph_order(std::string_view text) {
    if (text == "close") return MorphOrder::close;
    if (text == "open") return MorphOrder::open;
    if (text == "none") return MorphOrder::none;
    throw std::invalid_argument("unknown morph order '" + std::string(text) + "' (expected close|open|none)");
}

std::string_view to_string(MorphOrder order) {
    switch (order) {
        case MorphOrder::close: return "close";
        case MorphOrder::open: return "open";
        case MorphOrder::none: return "none";
    }
    return "none";
}

ImagePlane median_filter(const ImagePlane& img, int size) {
    if (size < 1 || size % 2 == 0) {
        throw std::invalid_argument("median_filter: kernel size must be odd and >= 1, got " + std::to_string(size));
    }
    if (size == 1) return img;
    const int r = size / 2;
    const auto mid = static_cast<std::ptrdiff_t>(size * size / 2);
    ImagePlane out(img.width(), img.height());
    std::vector<double> window(static_cast<std::size_t>(size * size));
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            std::size_t i = 0;
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) window[i++] = img.clamped(x + dx, y + dy);
            }
            std::nth_element(window.begin(), window.begin() + mid, window.end());
            out(x, y) = window[static_cast<std::size_t>(mid)];
        }
    }
    return out;
}

BinaryEdgeMap binarize(const ImagePlane& membership, double threshold) {
    BinaryEdgeMap out(membership.width(), membership.height());
    for (int y = 0; y < membership.height(); ++y) {
        for (int x = 0; x < membership.width(); ++x) out.set(x, y, membership(x, y) >= threshold);
    }
    return out;
}

namespace {

// any_of = true: dilation; false: erosion (all neighbours, out-of-bounds = background).
BinaryEdgeMap morph3x3(const BinaryEdgeMap& map, bool any_of) {
    BinaryEdgeMap out(map.width(), map.height());
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            bool result = !any_of;
            for (int dy = -1; dy <= 1 && result != any_of; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const bool v = map.contains(x + dx, y + dy) && map(x + dx, y + dy);
                    if (v == any_of) {
                        result = any_of;
                        break;
                    }
                }
            }
            out.set(x, y, result);
        }
    }
    return out;
}

}  // namespace

BinaryEdgeMap dilate(const BinaryEdgeMap& map) { return morph3x3(map, true); }
BinaryEdgeMap erode(const BinaryEdgeMap& map) { return morph3x3(map, false); }
BinaryEdgeMap close(const BinaryEdgeMap& map) { return erode(dilate(map)); }
BinaryEdgeMap open(const BinaryEdgeMap& map) { return dilate(erode(map)); }

BinaryEdgeMap refine(const ImagePlane& membership, const RefineConfig& cfg) {
    if (!(cfg.binarize_threshold > 0.0 && cfg.binarize_threshold < 1.0)) {
        throw std::invalid_argument("binarize threshold must lie in (0,1)");
    }
    const BinaryEdgeMap binary = binarize(median_filter(membership, cfg.median_kernel), cfg.binarize_threshold);
    switch (cfg.morph_order) {
        case MorphOrder::close: return close(binary);
        case MorphOrder::open: return open(binary);
        case MorphOrder::none: return binary;
    }
    return binary;
}

}  // namespace camedit::refine
