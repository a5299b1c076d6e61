#include "camedit/cam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace camedit::cam {

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

CamKernels CamKernels::defaults(int channels) {
    CamKernels k;
    const Kernel3 high_boost{{{0.0, -1.0, 0.0}, {-1.0, 5.0, -1.0}, {0.0, -1.0, 0.0}}};
    k.depthwise.assign(static_cast<std::size_t>(channels), high_boost);
    k.pointwise = {{{0.25, 0.25}, {0.25, 0.25}}};
    k.mix.assign(static_cast<std::size_t>(channels), std::vector<double>(static_cast<std::size_t>(channels), 0.25));
    for (int c = 0; c < channels; ++c) k.mix[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)] = 0.5;
    return k;
}

FeatureMaps depthwise_conv(const MultiChannelImage& img, const CamKernels& kernels) {
    if (kernels.depthwise.size() != static_cast<std::size_t>(img.channel_count())) {
        throw std::invalid_argument("depthwise: " + std::to_string(kernels.depthwise.size()) + " kernels for " +
                                    std::to_string(img.channel_count()) + " channels");
    }
    std::vector<ImagePlane> out;
    out.reserve(kernels.depthwise.size());
    for (int c = 0; c < img.channel_count(); ++c) {
        out.push_back(correlate3x3(img.channel(c), kernels.depthwise[static_cast<std::size_t>(c)]));
    }
    return FeatureMaps(std::move(out));
}

FeatureMaps pointwise_conv(const FeatureMaps& feat, const CamKernels& kernels) {
    const auto channels = static_cast<std::size_t>(feat.channel_count());
    if (kernels.mix.size() != channels ||
        std::any_of(kernels.mix.begin(), kernels.mix.end(), [&](const auto& row) { return row.size() != channels; })) {
        throw std::invalid_argument("pointwise: mixing matrix must be " + std::to_string(channels) + "x" +
                                    std::to_string(channels));
    }
    std::vector<ImagePlane> spatial;
    spatial.reserve(channels);
    for (const auto& plane : feat.channels()) spatial.push_back(correlate2x2(plane, kernels.pointwise));

    std::vector<ImagePlane> out;
    out.reserve(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        ImagePlane mixed(feat.width(), feat.height());
        auto dst = mixed.values();
        for (std::size_t in = 0; in < channels; ++in) {
            const double weight = kernels.mix[c][in];
            const auto src = spatial[in].values();
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += weight * src[i];
        }
        out.push_back(std::move(mixed));
    }
    return FeatureMaps(std::move(out));
}

FeatureMaps relu(const FeatureMaps& feat) {
    FeatureMaps out = feat;
    for (int c = 0; c < out.channel_count(); ++c) {
        for (double& v : out.channel(c).values()) v = std::max(v, 0.0);
    }
    return out;
}

FeatureMaps max_pool(const FeatureMaps& feat, int n) {
    if (n < 1) throw std::invalid_argument("max_pool window must be >= 1");
    const int ow = (feat.width() + n - 1) / n;
    const int oh = (feat.height() + n - 1) / n;
    std::vector<ImagePlane> out;
    for (const auto& plane : feat.channels()) {
        ImagePlane pooled(ow, oh);
        for (int oy = 0; oy < oh; ++oy) {
            for (int ox = 0; ox < ow; ++ox) {
                const int x_end = std::min(plane.width(), (ox + 1) * n);
                const int y_end = std::min(plane.height(), (oy + 1) * n);
                double best = plane(ox * n, oy * n);
                for (int y = oy * n; y < y_end; ++y) {
                    for (int x = ox * n; x < x_end; ++x) best = std::max(best, plane(x, y));
                }
                pooled(ox, oy) = best;
            }
        }
        out.push_back(std::move(pooled));
    }
    return FeatureMaps(std::move(out));
}

ChannelWeights channel_weights(const FeatureMaps& feat) {
    ChannelWeights w;
    for (const auto& plane : feat.channels()) {
        double sum = 0.0;
        for (double v : plane.values()) sum += v;
        w.alpha.push_back(logistic(sum / static_cast<double>(plane.size())));
    }
    return w;
}

ImagePlane fuse(const MultiChannelImage& img, const ChannelWeights& weights) {
    if (weights.alpha.size() != static_cast<std::size_t>(img.channel_count())) {
        throw std::invalid_argument("fuse: weight count does not match channel count");
    }
    double total = 0.0;
    for (double a : weights.alpha) total += a;
    if (!(total > 0.0)) throw std::invalid_argument("fuse: channel weights must sum to a positive value");

    ImagePlane out(img.width(), img.height());
    auto dst = out.values();
    for (int c = 0; c < img.channel_count(); ++c) {
        const double a = weights.alpha[static_cast<std::size_t>(c)];
        const auto src = img.channel(c).values();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += a * src[i];
    }
    for (double& v : dst) v = std::clamp(v / total, 0.0, 1.0);
    return out;
}

CamResult cam_extract(const MultiChannelImage& img, const CamKernels& kernels) {
    if (img.channel_count() != 3) {
        throw std::invalid_argument("cam_extract expects 3 channels, got " + std::to_string(img.channel_count()));
    }
    const FeatureMaps pooled = max_pool(relu(pointwise_conv(depthwise_conv(img, kernels), kernels)), 2);
    ChannelWeights weights = channel_weights(pooled);
    ImagePlane fused = fuse(img, weights);
    return {std::move(fused), std::move(weights)};
}

}  // namespace camedit::cam
