#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "camedit/image.hpp"

namespace camedit::eval {

struct CorpusEntry {
    std::string name;
    MultiChannelImage image;
    BinaryEdgeMap ground_truth;
};

struct SyntheticCorpusSpec {
    int count = 5;
    int width = 160;
    int height = 160;
    int shapes = 3;
    int specks = 60;
    double blur_sigma = 1.0;
    double sensor_sigma = 0.02;
    std::uint64_t base_seed = 100;
};

/// Flat-shaded circles, ellipses, rotated squares and triangles over a tinted
/// ramp, with exact boundary ground truth taken from the label raster before
/// blur, specks and sensor noise are applied. Quantized to 8 bits.
std::vector<CorpusEntry> synthetic_corpus(const SyntheticCorpusSpec& spec = {});

/// Separable Gaussian blur, replicate padding, radius ceil(3 sigma).
ImagePlane gaussian_blur(const ImagePlane& plane, double sigma);

/// `<name>.ppm` (or .pgm) with `<name>_gt.pgm`, sorted by name.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);
void save_corpus(const std::vector<CorpusEntry>& corpus, const std::filesystem::path& dir);

}  // namespace camedit::eval
