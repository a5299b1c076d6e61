#include "camedit/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace camedit::eval {

NoiseKind parse_noise_kind(std::string_view text) {
    if (text == "gaussian") return NoiseKind::gaussian;
    if (text == "salt-pepper") return NoiseKind::salt_pepper;
    throw std::invalid_argument("unknown noise kind '" + std::string(text) + "' (expected gaussian|salt-pepper)");
}

std::string_view to_string(NoiseKind kind) { return kind == NoiseKind::gaussian ? "gaussian" : "salt-pepper"; }

void validate(const NoiseSpec& spec) {
    if (!(spec.level >= 0.0)) throw std::invalid_argument("noise level must be >= 0");
    if (spec.kind == NoiseKind::salt_pepper && spec.level > 1.0) {
        throw std::invalid_argument("salt-pepper fraction must be <= 1");
    }
}

MultiChannelImage add_noise(const MultiChannelImage& img, const NoiseSpec& spec) {
    validate(spec);
    MultiChannelImage out = img;
    std::mt19937_64 rng(spec.seed.value);

    if (spec.kind == NoiseKind::gaussian) {
        if (spec.level == 0.0) return out;
        std::normal_distribution<double> normal(0.0, spec.level / 255.0);
        for (int c = 0; c < out.channel_count(); ++c) {
            for (double& v : out.channel(c).values()) v = std::clamp(v + normal(rng), 0.0, 1.0);
        }
        return out;
    }

    const std::size_t pixels = static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height());
    const auto count = static_cast<std::size_t>(std::floor(spec.level * static_cast<double>(pixels)));
    std::vector<std::size_t> order(pixels);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `count` entries become a uniform sample without replacement.
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pixels - 1);
        std::swap(order[i], order[pick(rng)]);
        const double value = (rng() & 1U) ? 1.0 : 0.0;
        for (int c = 0; c < out.channel_count(); ++c) out.channel(c).values()[order[i]] = value;
    }
    return out;
}

ImagePlane add_noise(const ImagePlane& img, const NoiseSpec& spec) {
    return add_noise(MultiChannelImage({img}), spec).channel(0);
}

}  // namespace camedit::eval
