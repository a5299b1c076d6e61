#include "camedit/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace camedit::pipeline {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const PipelineError&) {
        throw;
    } catch (const std::exception& e) {
        throw PipelineError(name, e.what());
    }
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw std::invalid_argument("setting '" + std::string(key) + "': cannot use '" + std::string(value) + "' (" +
                                std::string(expected) + ")");
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        bad_value(key, text, "expected a number");
    }
    return value;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
    text = trim(text);
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_value(key, text, "expected an integer");
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    bad_value(key, text, "expected true or false");
}

nlohmann::json parse_array(std::string_view key, std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        if (!j.is_array()) bad_value(key, text, "expected a nested numeric array");
        return j;
    } catch (const nlohmann::json::parse_error&) {
        bad_value(key, text, "expected a nested numeric array");
    }
}

Kernel3 to_kernel3(std::string_view key, const nlohmann::json& j) {
    Kernel3 k{};
    if (j.size() != 3) bad_value(key, j.dump(), "kernel must be 3x3");
    for (std::size_t r = 0; r < 3; ++r) {
        if (!j[r].is_array() || j[r].size() != 3) bad_value(key, j.dump(), "kernel must be 3x3");
        for (std::size_t c = 0; c < 3; ++c) {
            if (!j[r][c].is_number()) bad_value(key, j.dump(), "kernel entries must be numbers");
            k[r][c] = j[r][c].get<double>();
        }
    }
    return k;
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string kernel_text(const Kernel3& k) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : k) j.push_back(row);
    return j.dump();
}

}  // namespace

void validate(const PipelineConfig& cfg) {
    if (!(cfg.membership.k > 0.0)) throw std::invalid_argument("k-steepness must be positive");
    if (cfg.refine.median_kernel < 1 || cfg.refine.median_kernel % 2 == 0) {
        throw std::invalid_argument("median-kernel must be odd and >= 1");
    }
    if (!(cfg.refine.binarize_threshold > 0.0 && cfg.refine.binarize_threshold < 1.0)) {
        throw std::invalid_argument("binarize-threshold must lie in (0,1)");
    }
    edit::validate(cfg.edit);
    if (!(cfg.match_tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
    if (cfg.noise) eval::validate(*cfg.noise);
}

Trace run_from_candidates(const BinaryEdgeMap& candidates, const PipelineConfig& cfg) {
    Trace t;
    t.candidates = candidates;
    if (cfg.edit_enabled) {
        t.decisions = stage("edit", [&] { return edit::sweep_windows(candidates, cfg.edit); });
        t.edges = edit::apply_decisions(candidates, t.decisions);
    } else {
        t.edges = candidates;
    }
    return t;
}

Trace run_from_membership(const ImagePlane& membership, const PipelineConfig& cfg) {
    auto candidates = stage("refine", [&] { return refine::refine(membership, cfg.refine); });
    Trace t = run_from_candidates(candidates, cfg);
    t.membership = membership;
    return t;
}

Trace run_from_magnitude(const ImagePlane& magnitude, const PipelineConfig& cfg) {
    const double x0 = gradient::inflection_point(magnitude, cfg.membership);
    auto mu = stage("membership", [&] {
        gradient::MembershipConfig resolved = cfg.membership;
        resolved.x0 = x0;
        return gradient::membership(magnitude, resolved);
    });
    Trace t = run_from_membership(mu, cfg);
    t.magnitude = magnitude;
    t.x0 = x0;
    return t;
}

Trace run_from_fused(const ImagePlane& fused, const PipelineConfig& cfg) {
    auto field = stage("sobel", [&] { return gradient::sobel(fused); });
    Trace t = run_from_magnitude(field.magnitude, cfg);
    t.gradient = std::move(field);
    t.fused = fused;
    return t;
}

Trace run(const MultiChannelImage& img, const PipelineConfig& cfg) {
    stage("config", [&] {
        validate(cfg);
        return 0;
    });
    std::optional<cam::ChannelWeights> weights;
    ImagePlane fused = stage("cam", [&] {
        // A single channel has nothing to weigh: fusion of identical channels is the channel itself.
        if (!cfg.cam_enabled || img.channel_count() == 1) return to_grayscale(img);
        auto result = cam::cam_extract(img, cfg.kernels);
        weights = std::move(result.weights);
        return std::move(result.fused);
    });
    Trace t = run_from_fused(fused, cfg);
    t.weights = std::move(weights);
    return t;
}

BinaryEdgeMap detect(const MultiChannelImage& img, const PipelineConfig& cfg) { return *run(img, cfg).edges; }

BinaryEdgeMap sobel_baseline(const MultiChannelImage& img, double threshold) {
    const auto field = gradient::sobel(to_grayscale(img));
    BinaryEdgeMap out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) out.set(x, y, field.magnitude(x, y) >= threshold);
    }
    return out;
}

const std::vector<SettingSpec>& setting_specs() {
    static const std::vector<SettingSpec> specs{
        {"no-cam", "use luminance instead of channel-attention fusion", true},
        {"no-median", "skip the median filter (same as median-kernel 1)", true},
        {"no-edit", "skip the independence-test filter", true},
        {"k-steepness", "membership steepness k (default 5)", false},
        {"x0", "membership inflection: median, mean, or a number", false},
        {"median-kernel", "median filter size, odd (default 5)", false},
        {"binarize-threshold", "membership threshold in (0,1) (default 0.7)", false},
        {"morph-order", "close, open or none (default close)", false},
        {"window", "EDIT window size in pixels (default 15)", false},
        {"stride", "EDIT window stride in pixels (default 5)", false},
        {"k-displacement", "displacement limit k (default 3)", false},
        {"alpha", "significance level (default 0.05)", false},
        {"min-points", "windows with fewer edge pixels are skipped (default 5)", false},
        {"fisher-mode", "point or two-sided (default point)", false},
        {"tolerance", "F-measure matching distance in pixels (default 2)", false},
        {"noise", "inject noise before detection: none, gaussian or salt-pepper", false},
        {"noise-level", "gaussian sigma in 0..255 units, or salt-pepper fraction", false},
        {"seed", "random seed for noise injection", false},
        {"depthwise-kernel", "3x3 array, or one 3x3 array per channel", false},
        {"pointwise-kernel", "2x2 array", false},
        {"channel-mix", "CxC channel mixing matrix", false},
        {"baseline-threshold", "Sobel magnitude threshold of the baseline detector (default 0.5)", false},
    };
    return specs;
}

void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view raw) {
    const std::string_view value = trim(raw);
    if (key == "no-cam") {
        cfg.cam_enabled = !parse_bool(key, value);
    } else if (key == "no-median") {
        if (parse_bool(key, value)) cfg.refine.median_kernel = 1;
    } else if (key == "no-edit") {
        cfg.edit_enabled = !parse_bool(key, value);
    } else if (key == "k-steepness") {
        cfg.membership.k = parse_double(key, value);
    } else if (key == "x0") {
        if (value == "median") {
            cfg.membership.x0 = gradient::InflectionRule::median;
        } else if (value == "mean") {
            cfg.membership.x0 = gradient::InflectionRule::mean;
        } else {
            cfg.membership.x0 = parse_double(key, value);
        }
    } else if (key == "median-kernel") {
        cfg.refine.median_kernel = parse_int<int>(key, value);
    } else if (key == "binarize-threshold") {
        cfg.refine.binarize_threshold = parse_double(key, value);
    } else if (key == "morph-order") {
        cfg.refine.morph_order = refine::parse_morph_order(value);
    } else if (key == "window") {
        cfg.edit.window = parse_int<int>(key, value);
    } else if (key == "stride") {
        cfg.edit.stride = parse_int<int>(key, value);
    } else if (key == "k-displacement") {
        cfg.edit.k = parse_int<int>(key, value);
    } else if (key == "alpha") {
        cfg.edit.alpha = parse_double(key, value);
    } else if (key == "min-points") {
        cfg.edit.min_points = parse_int<int>(key, value);
    } else if (key == "fisher-mode") {
        cfg.edit.fisher_mode = stats::parse_fisher_mode(value);
    } else if (key == "tolerance") {
        cfg.match_tolerance = parse_double(key, value);
    } else if (key == "noise") {
        if (value == "none") {
            cfg.noise.reset();
        } else {
            const auto kind = eval::parse_noise_kind(value);
            if (!cfg.noise) cfg.noise = eval::NoiseSpec{};
            cfg.noise->kind = kind;
            cfg.noise->seed = cfg.seed;
        }
    } else if (key == "noise-level") {
        if (!cfg.noise) cfg.noise = eval::NoiseSpec{eval::NoiseKind::gaussian, 0.0, cfg.seed};
        cfg.noise->level = parse_double(key, value);
    } else if (key == "seed") {
        cfg.seed.value = parse_int<std::uint64_t>(key, value);
        if (cfg.noise) cfg.noise->seed = cfg.seed;
    } else if (key == "depthwise-kernel") {
        const auto j = parse_array(key, value);
        if (!j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array()) {
            cfg.kernels.depthwise.clear();
            for (const auto& k : j) cfg.kernels.depthwise.push_back(to_kernel3(key, k));
        } else {
            cfg.kernels.depthwise.assign(cfg.kernels.depthwise.size(), to_kernel3(key, j));
        }
    } else if (key == "pointwise-kernel") {
        const auto j = parse_array(key, value);
        if (j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2) {
            bad_value(key, value, "kernel must be 2x2");
        }
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) cfg.kernels.pointwise[r][c] = j[r][c].get<double>();
        }
    } else if (key == "channel-mix") {
        const auto j = parse_array(key, value);
        std::vector<std::vector<double>> mix;
        for (const auto& row : j) {
            if (!row.is_array()) bad_value(key, value, "mix must be a matrix");
            mix.push_back(row.get<std::vector<double>>());
        }
        cfg.kernels.mix = std::move(mix);
    } else if (key == "baseline-threshold") {
        cfg.baseline_threshold = parse_double(key, value);
    } else {
        throw std::invalid_argument("unknown setting '" + std::string(key) + "'");
    }
}

void apply_config_text(PipelineConfig& cfg, std::string_view text, const std::string& origin) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": expected key = value");
        }
        try {
            apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (end == text.size()) break;
    }
}

void apply_config_file(PipelineConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    apply_config_text(cfg, buffer.str(), path.string());
}

std::vector<std::pair<std::string, std::string>> describe(const PipelineConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("no-cam", cfg.cam_enabled ? "false" : "true");
    out.emplace_back("no-edit", cfg.edit_enabled ? "false" : "true");
    out.emplace_back("k-steepness", format_number(cfg.membership.k));
    if (const auto* fixed = std::get_if<double>(&cfg.membership.x0)) {
        out.emplace_back("x0", format_number(*fixed));
    } else {
        out.emplace_back("x0", std::get<gradient::InflectionRule>(cfg.membership.x0) == gradient::InflectionRule::median
                                   ? "median"
                                   : "mean");
    }
    out.emplace_back("median-kernel", std::to_string(cfg.refine.median_kernel));
    out.emplace_back("binarize-threshold", format_number(cfg.refine.binarize_threshold));
    out.emplace_back("morph-order", std::string(refine::to_string(cfg.refine.morph_order)));
    out.emplace_back("window", std::to_string(cfg.edit.window));
    out.emplace_back("stride", std::to_string(cfg.edit.stride));
    out.emplace_back("k-displacement", std::to_string(cfg.edit.k));
    out.emplace_back("alpha", format_number(cfg.edit.alpha));
    out.emplace_back("min-points", std::to_string(cfg.edit.min_points));
    out.emplace_back("fisher-mode", std::string(stats::to_string(cfg.edit.fisher_mode)));
    out.emplace_back("tolerance", format_number(cfg.match_tolerance));
    out.emplace_back("noise", cfg.noise ? std::string(eval::to_string(cfg.noise->kind)) : "none");
    if (cfg.noise) out.emplace_back("noise-level", format_number(cfg.noise->level));
    out.emplace_back("seed", std::to_string(cfg.seed.value));
    nlohmann::json depthwise = nlohmann::json::array();
    for (const auto& k : cfg.kernels.depthwise) depthwise.push_back(nlohmann::json::parse(kernel_text(k)));
    out.emplace_back("depthwise-kernel", depthwise.dump());
    out.emplace_back("pointwise-kernel", nlohmann::json(cfg.kernels.pointwise).dump());
    out.emplace_back("channel-mix", nlohmann::json(cfg.kernels.mix).dump());
    out.emplace_back("baseline-threshold", format_number(cfg.baseline_threshold));
    return out;
}

}  // namespace camedit::pipeline
