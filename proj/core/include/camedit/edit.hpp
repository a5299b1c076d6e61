#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "camedit/image.hpp"
#include "camedit/stats.hpp"

// Region-wise independence filtering of a candidate edge map. Square windows
// sweep the map in raster order; the edge pixels of each window are tested for
// dependence between their x and y displacement classes, and a pixel survives
// when at least one window holding it was tested dependent.
namespace camedit::edit {

struct EditConfig {
    int window = 15;
    int stride = 5;
    int k = 3;
    double alpha = stats::kDefaultAlpha;
    int min_points = 5;
    stats::FisherMode fisher_mode = stats::FisherMode::point;
};

void validate(const EditConfig& cfg);

struct WindowDecision {
    PixelCoord origin;
    int width = 0;
    int height = 0;
    std::size_t points = 0;
    std::optional<stats::ContingencyTable> table;
    std::optional<stats::TestResult> result;  // empty when skipped for too few points
    bool kept = false;
};

/// Origins 0, stride, 2*stride, ... plus a final origin flush with the far border.
/// An extent smaller than the window yields the single origin 0.
std::vector<int> window_origins(int extent, int window, int stride);

std::vector<WindowDecision> sweep_windows(const BinaryEdgeMap& map, const EditConfig& cfg);

/// Union of the edge pixels inside every kept window.
BinaryEdgeMap apply_decisions(const BinaryEdgeMap& map, const std::vector<WindowDecision>& decisions);

BinaryEdgeMap edit_filter(const BinaryEdgeMap& map, const EditConfig& cfg);

/// One line per window: origin_x origin_y points method p kept
void write_decisions(std::ostream& out, const std::vector<WindowDecision>& decisions);

}  // namespace camedit::edit
