#include "camedit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace camedit::eval {

namespace {

template <typename A, typename B>
void require_same_dims(const A& a, const B& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("metric inputs differ in dimensions");
    }
}

}  // namespace

double mse(const ImagePlane& pred, const ImagePlane& ref) {
    require_same_dims(pred, ref);
    const auto p = pred.values();
    const auto r = ref.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double diff = kPeak * p[i] - kPeak * r[i];
        sum += diff * diff;
    }
    return sum / static_cast<double>(p.size());
}

double mse(const BinaryEdgeMap& pred, const BinaryEdgeMap& ref) { return mse(to_plane(pred), to_plane(ref)); }

double psnr_from_mse(double mse_value) {
    if (mse_value < 0.0) throw std::invalid_argument("mse must be non-negative");
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeak * kPeak / mse_value);
}

double psnr(const ImagePlane& pred, const ImagePlane& ref) { return psnr_from_mse(mse(pred, ref)); }

double harmonic_f(double precision, double recall) {
    const double denom = precision + recall;
    return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

MetricsReport f_measure(const BinaryEdgeMap& pred, const BinaryEdgeMap& gt, double tolerance) {
    require_same_dims(pred, gt);
    if (!(tolerance >= 0.0)) throw std::invalid_argument("matching tolerance must be >= 0");
    const int w = pred.width();
    const int h = pred.height();
    const int reach = static_cast<int>(std::floor(tolerance));
    const double tol2 = tolerance * tolerance;

    struct Candidate {
        int dist2;
        std::size_t lo;
        std::size_t hi;
        std::size_t pred_index;
        std::size_t gt_index;
    };
    std::vector<Candidate> candidates;
    std::size_t n_pred = 0;
    std::size_t n_gt = gt.count();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!pred(x, y)) continue;
            ++n_pred;
            const std::size_t pi = static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
            for (int dy = -reach; dy <= reach; ++dy) {
                for (int dx = -reach; dx <= reach; ++dx) {
                    const int d2 = dx * dx + dy * dy;
                    if (static_cast<double>(d2) > tol2 || !gt.contains(x + dx, y + dy) || !gt(x + dx, y + dy)) continue;
                    const std::size_t gi = static_cast<std::size_t>(y + dy) * static_cast<std::size_t>(w) +
                                           static_cast<std::size_t>(x + dx);
                    candidates.push_back({d2, std::min(pi, gi), std::max(pi, gi), pi, gi});
                }
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& l, const Candidate& r) {
        return std::tie(l.dist2, l.lo, l.hi, l.pred_index) < std::tie(r.dist2, r.lo, r.hi, r.pred_index);
    });

    const std::size_t pixels = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    std::vector<std::uint8_t> pred_used(pixels, 0);
    std::vector<std::uint8_t> gt_used(pixels, 0);
    std::size_t tp = 0;
    for (const auto& c : candidates) {
        if (pred_used[c.pred_index] || gt_used[c.gt_index]) continue;
        pred_used[c.pred_index] = 1;
        gt_used[c.gt_index] = 1;
        ++tp;
    }

    MetricsReport report;
    report.tp = tp;
    report.fp = n_pred - tp;
    report.fn = n_gt - tp;
    report.precision = n_pred == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(n_pred);
    report.recall = n_gt == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(n_gt);
    report.f_measure = harmonic_f(report.precision, report.recall);
    return report;
}

MetricsReport evaluate(const BinaryEdgeMap& pred, const BinaryEdgeMap& gt, double tolerance) {
    MetricsReport report = f_measure(pred, gt, tolerance);
    report.mse = mse(pred, gt);
    report.psnr_db = psnr_from_mse(report.mse);
    return report;
}

}  // namespace camedit::eval
