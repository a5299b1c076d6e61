#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "camedit/image.hpp"

namespace testing_support {

inline camedit::ImagePlane random_plane(int w, int h, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    camedit::ImagePlane p(w, h);
    for (double& v : p.values()) v = u(rng);
    return p;
}

inline camedit::MultiChannelImage random_image(int w, int h, int channels, std::mt19937_64& rng) {
    std::vector<camedit::ImagePlane> planes;
    for (int c = 0; c < channels; ++c) planes.push_back(random_plane(w, h, rng));
    return camedit::MultiChannelImage(std::move(planes));
}

inline camedit::BinaryEdgeMap random_map(int w, int h, double density, std::mt19937_64& rng) {
    std::bernoulli_distribution on(density);
    camedit::BinaryEdgeMap m(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) m.set(x, y, on(rng));
    }
    return m;
}

/// Fresh scratch directory under the system temp dir, removed on destruction.
class ScratchDir {
public:
    explicit ScratchDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("camedit_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace testing_support
