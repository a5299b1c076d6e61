#include "camedit/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "camedit/raster_io.hpp"

namespace camedit::eval {

namespace {

constexpr int kSupersample = 4;

struct Point2 {
    double x;
    double y;
};

// Inside test for a convex polygon with counter-clockwise vertices in image coordinates.
bool inside_convex(const std::vector<Point2>& v, double x, double y) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& p = v[i];
        const Point2& q = v[(i + 1) % v.size()];
        if ((q.x - p.x) * (y - p.y) - (q.y - p.y) * (x - p.x) < 0.0) return false;
    }
    return true;
}

enum class Shape { circle, ellipse, square, triangle };

struct ShapeMask {
    Shape kind = Shape::circle;
    double cx = 0.0;
    double cy = 0.0;
    double size = 0.0;
    double angle = 0.0;
    std::vector<Point2> polygon;

    bool contains(double x, double y) const {
        switch (kind) {
            case Shape::circle:
                return std::hypot(x - cx, y - cy) < size;
            case Shape::ellipse: {
                const double u = (x - cx) * std::cos(angle) + (y - cy) * std::sin(angle);
                const double v = -(x - cx) * std::sin(angle) + (y - cy) * std::cos(angle);
                return (u / size) * (u / size) + (v / (0.6 * size)) * (v / (0.6 * size)) < 1.0;
            }
            default:
                return inside_convex(polygon, x, y);
        }
    }
};

ShapeMask draw_shape(Shape kind, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> centre(40.0, 120.0);
    std::uniform_real_distribution<double> extent(18.0, 30.0);
    ShapeMask m;
    m.kind = kind;
    m.cx = centre(rng);
    m.cy = centre(rng);
    m.size = extent(rng);
    constexpr double pi = std::numbers::pi;
    if (kind == Shape::ellipse) {
        m.angle = std::uniform_real_distribution<double>(0.0, pi)(rng);
    } else if (kind == Shape::square) {
        const double turn = std::uniform_real_distribution<double>(10.0, 35.0)(rng) * pi / 180.0;
        const double r = 0.7 * m.size * std::numbers::sqrt2;
        for (const double corner : {45.0, 135.0, 225.0, 315.0}) {
            const double a = turn + corner * pi / 180.0;
            m.polygon.push_back({m.cx + r * std::cos(a), m.cy + r * std::sin(a)});
        }
    } else if (kind == Shape::triangle) {
        const double a0 = std::uniform_real_distribution<double>(0.0, 2.0 * pi)(rng);
        for (int k = 0; k < 3; ++k) {
            const double a = a0 + k * 2.0 * pi / 3.0;
            m.polygon.push_back({m.cx + m.size * std::cos(a), m.cy + m.size * std::sin(a)});
        }
    }
    return m;
}

std::vector<double> gaussian_taps(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double w = std::exp(-0.5 * i * i / (sigma * sigma));
        taps[static_cast<std::size_t>(i + radius)] = w;
        sum += w;
    }
    for (double& w : taps) w /= sum;
    return taps;
}

CorpusEntry make_entry(const SyntheticCorpusSpec& spec, int index) {
    const int w = spec.width;
    const int h = spec.height;
    std::mt19937_64 rng(spec.base_seed + static_cast<std::uint64_t>(index));
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);

    std::array<double, 3> bg{0.35, 0.40, 0.45};
    for (double& b : bg) b += jitter(rng);
    std::vector<ImagePlane> planes;
    for (int c = 0; c < 3; ++c) {
        ImagePlane p(w, h);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) p(x, y) = bg[static_cast<std::size_t>(c)] + 0.1 * x / w;
        }
        planes.push_back(std::move(p));
    }

    std::vector<int> label(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
    constexpr std::array kinds{Shape::circle, Shape::ellipse, Shape::square, Shape::triangle};
    for (int s = 0; s < spec.shapes; ++s) {
        const ShapeMask mask = draw_shape(kinds[static_cast<std::size_t>((index + s) % 4)], rng);
        const double sign = (rng() & 1U) ? 1.0 : -1.0;
        const double contrast = std::uniform_real_distribution<double>(0.25, 0.5)(rng);
        std::array<double, 3> colour{};
        for (std::size_t c = 0; c < 3; ++c) colour[c] = std::clamp(bg[c] + sign * contrast + jitter(rng), 0.0, 1.0);

        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                int hits = 0;
                for (int j = 0; j < kSupersample; ++j) {
                    for (int i = 0; i < kSupersample; ++i) {
                        hits += mask.contains(x + (i + 0.5) / kSupersample, y + (j + 0.5) / kSupersample);
                    }
                }
                if (hits == 0) continue;
                const double cover = static_cast<double>(hits) / (kSupersample * kSupersample);
                for (std::size_t c = 0; c < 3; ++c) {
                    double& v = planes[c](x, y);
                    v = v * (1.0 - cover) + colour[c] * cover;
                }
                if (cover >= 0.5) label[static_cast<std::size_t>(y * w + x)] = s + 1;
            }
        }
    }

    BinaryEdgeMap gt(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int here = label[static_cast<std::size_t>(y * w + x)];
            if (x + 1 < w && label[static_cast<std::size_t>(y * w + x + 1)] != here) {
                gt.set(x, y, true);
                gt.set(x + 1, y, true);
            }
            if (y + 1 < h && label[static_cast<std::size_t>((y + 1) * w + x)] != here) {
                gt.set(x, y, true);
                gt.set(x, y + 1, true);
            }
        }
    }

    for (auto& p : planes) p = gaussian_blur(p, spec.blur_sigma);

    std::uniform_int_distribution<int> speck_x(2, w - 3);
    std::uniform_int_distribution<int> speck_y(2, h - 3);
    std::uniform_int_distribution<int> speck_size(1, 2);
    for (int n = 0; n < spec.specks; ++n) {
        const int y0 = speck_y(rng);
        const int x0 = speck_x(rng);
        const int sh = speck_size(rng);
        const int sw = speck_size(rng);
        const double delta = (rng() & 1U) ? 0.3 : -0.3;
        for (auto& p : planes) {
            for (int y = y0; y < y0 + sh; ++y) {
                for (int x = x0; x < x0 + sw; ++x) p(x, y) += delta;
            }
        }
    }

    std::normal_distribution<double> sensor(0.0, spec.sensor_sigma);
    for (auto& p : planes) {
        for (double& v : p.values()) v = sample_to_unit(unit_to_sample(std::clamp(v + sensor(rng), 0.0, 1.0)));
    }

    char name[32];
    std::snprintf(name, sizeof name, "synth_%02d", index);
    return {name, MultiChannelImage(std::move(planes)), std::move(gt)};
}

}  // namespace

ImagePlane gaussian_blur(const ImagePlane& plane, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("blur sigma must be positive");
    const auto taps = gaussian_taps(sigma);
    const int radius = static_cast<int>(taps.size() / 2);
    ImagePlane tmp(plane.width(), plane.height());
    for (int y = 0; y < plane.height(); ++y) {
        for (int x = 0; x < plane.width(); ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) acc += taps[static_cast<std::size_t>(i + radius)] * plane.clamped(x + i, y);
            tmp(x, y) = acc;
        }
    }
    ImagePlane out(plane.width(), plane.height());
    for (int y = 0; y < plane.height(); ++y) {
        for (int x = 0; x < plane.width(); ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) acc += taps[static_cast<std::size_t>(i + radius)] * tmp.clamped(x, y + i);
            out(x, y) = acc;
        }
    }
    return out;
}

std::vector<CorpusEntry> synthetic_corpus(const SyntheticCorpusSpec& spec) {
    if (spec.count < 1 || spec.width < 16 || spec.height < 16 || spec.shapes < 0 || spec.specks < 0) {
        throw std::invalid_argument("invalid synthetic corpus spec");
    }
    std::vector<CorpusEntry> out;
    for (int i = 0; i < spec.count; ++i) out.push_back(make_entry(spec, i));
    return out;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw std::runtime_error("corpus directory not found: " + dir.string());
    std::vector<std::filesystem::path> images;
    for (const auto& item : std::filesystem::directory_iterator(dir)) {
        const auto& p = item.path();
        const auto ext = p.extension().string();
        const auto stem = p.stem().string();
        if ((ext == ".ppm" || ext == ".pgm") && !stem.ends_with("_gt")) images.push_back(p);
    }
    std::sort(images.begin(), images.end());
    if (images.empty()) throw std::runtime_error("no images in corpus directory " + dir.string());

    std::vector<CorpusEntry> out;
    for (const auto& p : images) {
        const auto gt_path = dir / (p.stem().string() + "_gt.pgm");
        if (!std::filesystem::exists(gt_path)) throw std::runtime_error("missing ground truth " + gt_path.string());
        auto image = load_raster(p);
        auto gt = load_edge_map(gt_path);
        if (gt.width() != image.width() || gt.height() != image.height()) {
            throw std::runtime_error(p.stem().string() + ": image and ground truth differ in size");
        }
        out.push_back({p.stem().string(), std::move(image), std::move(gt)});
    }
    return out;
}

void save_corpus(const std::vector<CorpusEntry>& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& e : corpus) {
        save_raster(dir / (e.name + (e.image.channel_count() == 1 ? ".pgm" : ".ppm")), e.image);
        save_raster(dir / (e.name + "_gt.pgm"), e.ground_truth);
    }
}

}  // namespace camedit::eval
