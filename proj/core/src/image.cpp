#include "camedit/image.hpp"

#include <cmath>
#include <string>

namespace camedit {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("raster dimensions must be at least 1x1, got " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

}  // namespace

ImagePlane::ImagePlane(int width, int height, double fill) : width_(width), height_(height) {
    check_dims(width, height);
    if (!std::isfinite(fill)) throw std::invalid_argument("plane values must be finite");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ImagePlane::ImagePlane(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw std::invalid_argument("plane data length does not match width*height");
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw std::invalid_argument("plane values must be finite");
    }
}

MultiChannelImage::MultiChannelImage(std::vector<ImagePlane> channels) : channels_(std::move(channels)) {
    if (channels_.empty()) throw std::invalid_argument("image needs at least one channel");
    for (const auto& ch : channels_) {
        if (ch.width() != channels_.front().width() || ch.height() != channels_.front().height()) {
            throw std::invalid_argument("all channels must share dimensions");
        }
    }
}

MultiChannelImage MultiChannelImage::replicate(const ImagePlane& plane, int channels) {
    if (channels < 1) throw std::invalid_argument("channel count must be positive");
    return MultiChannelImage(std::vector<ImagePlane>(static_cast<std::size_t>(channels), plane));
}

BinaryEdgeMap::BinaryEdgeMap(int width, int height, bool fill) : width_(width), height_(height) {
    check_dims(width, height);
    bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill ? 1 : 0);
}

std::size_t BinaryEdgeMap::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

PixelCoordSet BinaryEdgeMap::points() const {
    PixelCoordSet out;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if ((*this)(x, y)) out.push_back({x, y});
        }
    }
    return out;
}

bool BinaryEdgeMap::subset_of(const BinaryEdgeMap& other) const {
    if (width_ != other.width_ || height_ != other.height_) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] && !other.bits_[i]) return false;
    }
    return true;
}

ImagePlane to_plane(const BinaryEdgeMap& map) {
    ImagePlane out(map.width(), map.height());
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) out(x, y) = map(x, y) ? 1.0 : 0.0;
    }
    return out;
}

ImagePlane to_grayscale(const MultiChannelImage& img) {
    if (img.channel_count() == 1) return img.channel(0);
    if (img.channel_count() != 3) {
        throw std::invalid_argument("to_grayscale supports 1 or 3 channels, got " +
                                    std::to_string(img.channel_count()));
    }
    const auto r = img.channel(0).values();
    const auto g = img.channel(1).values();
    const auto b = img.channel(2).values();
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
    return ImagePlane(img.width(), img.height(), std::move(out));
}

}  // namespace camedit
