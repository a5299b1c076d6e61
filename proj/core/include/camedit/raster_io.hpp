#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "camedit/image.hpp"

namespace camedit {

class RasterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 8-bit sample to working scale: v / 255.
double sample_to_unit(std::uint8_t v);

/// Working scale to 8-bit with round-half-up; out-of-range values clamp.
std::uint8_t unit_to_sample(double v);

/// Reads binary PGM (P5, one channel) or PPM (P6, three channels) with maxval 255.
MultiChannelImage load_raster(const std::filesystem::path& path);

/// One channel writes P5, three channels write P6.
void save_raster(const std::filesystem::path& path, const MultiChannelImage& img);
void save_raster(const std::filesystem::path& path, const ImagePlane& plane);
/// Edge maps are written as P5 with 0/255.
void save_raster(const std::filesystem::path& path, const BinaryEdgeMap& map);

/// Reads a P5 file as an edge map; any nonzero sample is an edge.
BinaryEdgeMap load_edge_map(const std::filesystem::path& path);

// Lossless float64 planes in NumPy .npy layout ('<f8', C order, shape (height, width)).
void save_npy(const std::filesystem::path& path, const ImagePlane& plane);
ImagePlane load_npy(const std::filesystem::path& path);

}  // namespace camedit
