#pragma once

#include <cstddef>

#include "camedit/image.hpp"

namespace camedit::eval {

/// Peak sample value on the 8-bit scale used by MSE/PSNR.
inline constexpr double kPeak = 255.0;

struct MetricsReport {
    double mse = 0.0;
    double psnr_db = 0.0;  // +infinity when mse == 0
    double precision = 1.0;
    double recall = 1.0;
    double f_measure = 1.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

/// Mean squared difference with both planes mapped to 0..255.
double mse(const ImagePlane& pred, const ImagePlane& ref);
double mse(const BinaryEdgeMap& pred, const BinaryEdgeMap& ref);

/// 10 log10(255^2 / mse); +infinity for identical inputs.
double psnr_from_mse(double mse_value);
double psnr(const ImagePlane& pred, const ImagePlane& ref);

double harmonic_f(double precision, double recall);

/// One-to-one matching within Euclidean distance `tolerance`. Candidate pairs
/// are taken greedily in order of distance; equal distances are ordered by the
/// raster indices of the pair (smaller index first, then larger). The order
/// only depends on the unordered pair of positions, so swapping pred and gt
/// swaps precision and recall. Empty pred and empty gt score P = R = F = 1.
MetricsReport f_measure(const BinaryEdgeMap& pred, const BinaryEdgeMap& gt, double tolerance = 2.0);

/// f_measure plus mse/psnr of pred against gt.
MetricsReport evaluate(const BinaryEdgeMap& pred, const BinaryEdgeMap& gt, double tolerance = 2.0);

}  // namespace camedit::eval
