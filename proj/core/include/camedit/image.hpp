#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace camedit {

/// Column/row position in a raster. x is the column, y the row.
struct PixelCoord {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const PixelCoord&, const PixelCoord&) = default;
};

using PixelCoordSet = std::vector<PixelCoord>;

struct RandomSeed {
    std::uint64_t value = 0;
};

/// Real-valued raster, row-major, working range [0,1].
class ImagePlane {
public:
    ImagePlane(int width, int height, double fill = 0.0);
    ImagePlane(int width, int height, std::vector<double> data);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    double operator()(int x, int y) const { return data_[index(x, y)]; }
    double& operator()(int x, int y) { return data_[index(x, y)]; }

    /// Replicate-padded read: coordinates outside the raster clamp to the border.
    double clamped(int x, int y) const {
        return data_[index(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1))];
    }

    std::span<const double> values() const { return data_; }
    std::span<double> values() { return data_; }

    friend bool operator==(const ImagePlane&, const ImagePlane&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<double> data_;
};

/// Ordered planes of identical dimensions. RGB input has three.
class MultiChannelImage {
public:
    explicit MultiChannelImage(std::vector<ImagePlane> channels);

    static MultiChannelImage replicate(const ImagePlane& plane, int channels);

    int width() const { return channels_.front().width(); }
    int height() const { return channels_.front().height(); }
    int channel_count() const { return static_cast<int>(channels_.size()); }

    const ImagePlane& channel(int c) const { return channels_.at(static_cast<std::size_t>(c)); }
    ImagePlane& channel(int c) { return channels_.at(static_cast<std::size_t>(c)); }
    const std::vector<ImagePlane>& channels() const { return channels_; }

    friend bool operator==(const MultiChannelImage&, const MultiChannelImage&) = default;

private:
    std::vector<ImagePlane> channels_;
};

class BinaryEdgeMap {
public:
    BinaryEdgeMap(int width, int height, bool fill = false);

    int width() const { return width_; }
    int height() const { return height_; }

    bool operator()(int x, int y) const { return bits_[index(x, y)] != 0; }
    void set(int x, int y, bool on) { bits_[index(x, y)] = on ? 1 : 0; }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    std::size_t count() const;
    bool empty() const { return count() == 0; }

    /// Edge pixels in raster order.
    PixelCoordSet points() const;

    /// True when every edge pixel of this map is also set in `other`.
    bool subset_of(const BinaryEdgeMap& other) const;

    friend bool operator==(const BinaryEdgeMap&, const BinaryEdgeMap&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

/// Edge map as a [0,1] plane (edge = 1).
ImagePlane to_plane(const BinaryEdgeMap& map);

/// Luminance: copy for one channel, Rec. 601 weights for three.
ImagePlane to_grayscale(const MultiChannelImage& img);

}  // namespace camedit
