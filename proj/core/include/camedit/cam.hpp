#pragma once

#include <vector>

#include "camedit/filter.hpp"
#include "camedit/image.hpp"

// Channel attention: dual convolution, ReLU, max pooling, then one sigmoid
// weight per channel from the pooled spatial mean. The weights are applied to
// the full-resolution input channels to produce one fused plane.
namespace camedit::cam {

/// Per-channel feature planes. Values are unbounded until relu().
using FeatureMaps = MultiChannelImage;

struct CamKernels {
    std::vector<Kernel3> depthwise;         // one per channel
    Kernel2 pointwise{};                    // spatial part of the pointwise stage
    std::vector<std::vector<double>> mix;   // mix[out][in], C x C

    /// High-boost 3x3 per channel, 2x2 box, mix 0.5 on the diagonal and 0.25 elsewhere.
    static CamKernels defaults(int channels = 3);
};

struct ChannelWeights {
    std::vector<double> alpha;
};

FeatureMaps depthwise_conv(const MultiChannelImage& img, const CamKernels& kernels);
FeatureMaps pointwise_conv(const FeatureMaps& feat, const CamKernels& kernels);
FeatureMaps relu(const FeatureMaps& feat);

/// Non-overlapping n x n max pooling, stride n. Output is ceil(w/n) x ceil(h/n);
/// ragged border blocks take the max of the pixels they cover.
FeatureMaps max_pool(const FeatureMaps& feat, int n = 2);

/// alpha_c = sigmoid(mean of channel c), mean summed in raster order.
ChannelWeights channel_weights(const FeatureMaps& feat);

/// Weighted channel average sum(alpha_c * I_c) / sum(alpha_c).
ImagePlane fuse(const MultiChannelImage& img, const ChannelWeights& weights);

struct CamResult {
    ImagePlane fused;
    ChannelWeights weights;
};

CamResult cam_extract(const MultiChannelImage& img, const CamKernels& kernels);

double logistic(double t);

}  // namespace camedit::cam
