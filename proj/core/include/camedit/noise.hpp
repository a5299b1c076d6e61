#pragma once

#include <string_view>

#include "camedit/image.hpp"

namespace camedit::eval {

enum class NoiseKind { gaussian, salt_pepper };

NoiseKind parse_noise_kind(std::string_view text);
std::string_view to_string(NoiseKind kind);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::gaussian;
    /// Gaussian: standard deviation in 0..255 units. Salt-pepper: fraction of pixels in [0,1].
    double level = 0.0;
    RandomSeed seed{};
};

void validate(const NoiseSpec& spec);

/// Gaussian noise is drawn per sample and clamped to [0,1]. Salt-pepper picks
/// floor(level * width * height) distinct pixels and sets every channel of each
/// to 0 or 1 with equal probability. Same spec and input give the same output.
ImagePlane add_noise(const ImagePlane& img, const NoiseSpec& spec);
MultiChannelImage add_noise(const MultiChannelImage& img, const NoiseSpec& spec);

}  // namespace camedit::eval
