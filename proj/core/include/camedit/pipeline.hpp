#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "camedit/cam.hpp"
#include "camedit/edit.hpp"
#include "camedit/gradient.hpp"
#include "camedit/image.hpp"
#include "camedit/noise.hpp"
#include "camedit/refine.hpp"

namespace camedit::pipeline {

/// Failure inside a pipeline stage; what() starts with the stage name.
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string stage, const std::string& detail)
        : std::runtime_error(stage + ": " + detail), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct PipelineConfig {
    bool cam_enabled = true;
    cam::CamKernels kernels = cam::CamKernels::defaults(3);
    gradient::MembershipConfig membership;
    refine::RefineConfig refine;
    bool edit_enabled = true;
    edit::EditConfig edit;
    double match_tolerance = 2.0;
    std::optional<eval::NoiseSpec> noise;
    RandomSeed seed{};
    /// Magnitude threshold of the thresholded-Sobel comparison detector.
    double baseline_threshold = 0.5;
};

void validate(const PipelineConfig& cfg);

/// Everything a run produced, stage by stage. Stages before the entry point stay empty.
struct Trace {
    std::optional<ImagePlane> fused;
    std::optional<cam::ChannelWeights> weights;
    std::optional<gradient::GradientField> gradient;
    std::optional<ImagePlane> magnitude;
    std::optional<double> x0;
    std::optional<ImagePlane> membership;
    std::optional<BinaryEdgeMap> candidates;
    std::vector<edit::WindowDecision> decisions;
    std::optional<BinaryEdgeMap> edges;
};

/// Entry points. Each runs its own stage and every later one.
Trace run(const MultiChannelImage& img, const PipelineConfig& cfg);
Trace run_from_fused(const ImagePlane& fused, const PipelineConfig& cfg);
Trace run_from_magnitude(const ImagePlane& magnitude, const PipelineConfig& cfg);
Trace run_from_membership(const ImagePlane& membership, const PipelineConfig& cfg);
Trace run_from_candidates(const BinaryEdgeMap& candidates, const PipelineConfig& cfg);

/// Attention fusion (or luminance) -> Sobel -> membership -> refine -> EDIT.
BinaryEdgeMap detect(const MultiChannelImage& img, const PipelineConfig& cfg);

/// Comparison detector: grayscale Sobel magnitude >= threshold, nothing else.
BinaryEdgeMap sobel_baseline(const MultiChannelImage& img, double threshold);

// Settings shared by the config file and the CLI. Keys equal the long flag
// names without the leading dashes.
struct SettingSpec {
    std::string_view key;
    std::string_view help;
    bool is_flag;
};

const std::vector<SettingSpec>& setting_specs();

/// Applies one setting. Array-valued settings take JSON-style nested arrays.
void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` document; '#' starts a comment. Unknown keys are errors.
void apply_config_text(PipelineConfig& cfg, std::string_view text, const std::string& origin = "<config>");
void apply_config_file(PipelineConfig& cfg, const std::filesystem::path& path);

/// Environment variable naming a default config file.
inline constexpr const char* kConfigEnvVar = "CAMEDIT_CONFIG";

/// Ordered key/value echo of every setting.
std::vector<std::pair<std::string, std::string>> describe(const PipelineConfig& cfg);

}  // namespace camedit::pipeline
