#include "camedit/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace camedit::gradient {

GradientField sobel(const ImagePlane& img) {
    if (img.width() < 3 || img.height() < 3) {
        throw std::invalid_argument("sobel: image must be at least 3x3");
    }
    // Same kernels as kSobelX/kSobelY, summed per side first so flat regions give exactly zero.
    const int w = img.width();
    const int h = img.height();
    ImagePlane gx(w, h);
    ImagePlane gy(w, h);
    for (int y = 0; y < h; ++y) {
        const int ym = std::max(y - 1, 0);
        const int yp = std::min(y + 1, h - 1);
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(x - 1, 0);
            const int xp = std::min(x + 1, w - 1);
            const double right = img(xp, ym) + 2.0 * img(xp, y) + img(xp, yp);
            const double left = img(xm, ym) + 2.0 * img(xm, y) + img(xm, yp);
            const double below = img(xm, yp) + 2.0 * img(x, yp) + img(xp, yp);
            const double above = img(xm, ym) + 2.0 * img(x, ym) + img(xp, ym);
            gx(x, y) = right - left;
            gy(x, y) = above - below;
        }
    }
    ImagePlane mag(img.width(), img.height());
    ImagePlane theta(img.width(), img.height());
    const auto x = gx.values();
    const auto y = gy.values();
    auto m = mag.values();
    auto t = theta.values();
    for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = std::sqrt(x[i] * x[i] + y[i] * y[i]);
        t[i] = std::atan2(y[i], x[i]);
    }
    return {std::move(gx), std::move(gy), std::move(mag), std::move(theta)};
}

double membership_value(double x, double k, double x0) { return 1.0 / (1.0 + std::exp(-k * (x - x0))); }

double median_of(const ImagePlane& plane) {
    std::vector<double> v(plane.values().begin(), plane.values().end());
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double mean_of(const ImagePlane& plane) {
    double sum = 0.0;
    for (double v : plane.values()) sum += v;
    return sum / static_cast<double>(plane.size());
}

double inflection_point(const ImagePlane& magnitude, const MembershipConfig& cfg) {
    if (const auto* fixed = std::get_if<double>(&cfg.x0)) return *fixed;
    return std::get<InflectionRule>(cfg.x0) == InflectionRule::median ? median_of(magnitude) : mean_of(magnitude);
}

ImagePlane membership(const ImagePlane& magnitude, const MembershipConfig& cfg) {
    if (!(cfg.k > 0.0)) throw std::invalid_argument("membership: steepness k must be positive");
    const double x0 = inflection_point(magnitude, cfg);
    ImagePlane out(magnitude.width(), magnitude.height());
    const auto src = magnitude.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = membership_value(src[i], cfg.k, x0);
    return out;
}

}  // namespace camedit::gradient
