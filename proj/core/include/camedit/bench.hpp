#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "camedit/corpus.hpp"
#include "camedit/metrics.hpp"
#include "camedit/pipeline.hpp"

namespace camedit::eval {

struct ImageScore {
    std::string name;
    MetricsReport metrics;
    /// False when only mse/psnr against the grayscale input were computed.
    bool matched = true;
};

struct BenchReport {
    std::vector<ImageScore> rows;
    /// Arithmetic means of the per-image values; tp/fp/fn are totals.
    MetricsReport mean;
};

using Detector = std::function<BinaryEdgeMap(const MultiChannelImage&, const pipeline::PipelineConfig&)>;

/// Noise (when configured) uses seed cfg.noise->seed + image index. Rows keep corpus order.
BenchReport bench(const std::vector<CorpusEntry>& corpus, const pipeline::PipelineConfig& cfg,
                  const Detector& detector = pipeline::detect);

MetricsReport mean_of(const std::vector<ImageScore>& rows);

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Single JSON object: config echo, per-image rows, means. Infinite PSNR is written as "inf".
std::string report_json(const BenchReport& report, const ConfigEcho& config);
/// Header row, one row per image, then a "mean" row.
std::string report_csv(const BenchReport& report);

}  // namespace camedit::eval
