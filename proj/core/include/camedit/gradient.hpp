#pragma once

#include <variant>

#include "camedit/filter.hpp"
#include "camedit/image.hpp"

namespace camedit::gradient {

inline constexpr Kernel3 kSobelX{{{-1.0, 0.0, 1.0}, {-2.0, 0.0, 2.0}, {-1.0, 0.0, 1.0}}};
inline constexpr Kernel3 kSobelY{{{1.0, 2.0, 1.0}, {0.0, 0.0, 0.0}, {-1.0, -2.0, -1.0}}};

struct GradientField {
    ImagePlane gx;
    ImagePlane gy;
    ImagePlane magnitude;
    ImagePlane theta;  // atan2(gy, gx) in (-pi, pi]; diagnostic only
};

/// Requires at least 3x3 pixels.
GradientField sobel(const ImagePlane& img);

enum class InflectionRule { median, mean };

struct MembershipConfig {
    double k = 5.0;
    /// Either a rule evaluated on the magnitude plane or a fixed value.
    std::variant<InflectionRule, double> x0 = InflectionRule::median;
};

/// mu(x) = 1 / (1 + exp(-k (x - x0)))
double membership_value(double x, double k, double x0);

/// Resolves cfg.x0 against the given magnitude plane.
double inflection_point(const ImagePlane& magnitude, const MembershipConfig& cfg);

ImagePlane membership(const ImagePlane& magnitude, const MembershipConfig& cfg);

/// Exact median; even counts average the two middle order statistics.
double median_of(const ImagePlane& plane);

double mean_of(const ImagePlane& plane);

}  // namespace camedit::gradient
