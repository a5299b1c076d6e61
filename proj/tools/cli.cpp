#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>

#include <CLI11.hpp>

#include "camedit/bench.hpp"
#include "camedit/corpus.hpp"
#include "camedit/metrics.hpp"
#include "camedit/noise.hpp"
#include "camedit/pipeline.hpp"
#include "camedit/raster_io.hpp"

namespace camedit::cli {

namespace {

namespace fs = std::filesystem;
using pipeline::PipelineConfig;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Pipeline settings exposed as long options. Precedence, lowest first:
// defaults, the file named by CAMEDIT_CONFIG, --config, explicit flags.
class SettingOptions {
public:
    void attach(CLI::App& app) {
        app.add_option("--config", config_file_, "key = value settings file")->check(CLI::ExistingFile);
        for (const auto& spec : pipeline::setting_specs()) {
            const std::string name = "--" + std::string(spec.key);
            if (spec.is_flag) {
                options_[std::string(spec.key)] = app.add_flag(name, flags_[std::string(spec.key)], std::string(spec.help));
            } else {
                options_[std::string(spec.key)] = app.add_option(name, values_[std::string(spec.key)], std::string(spec.help));
            }
        }
    }

    PipelineConfig resolve() const {
        PipelineConfig cfg;
        try {
            if (const char* env = std::getenv(pipeline::kConfigEnvVar); env != nullptr && *env != '\0') {
                pipeline::apply_config_file(cfg, env);
            }
            if (!config_file_.empty()) pipeline::apply_config_file(cfg, config_file_);
            for (const auto& spec : pipeline::setting_specs()) {
                const std::string key(spec.key);
                if (options_.at(key)->count() == 0) continue;
                pipeline::apply_setting(cfg, key, spec.is_flag ? "true" : values_.at(key));
            }
            pipeline::validate(cfg);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }

private:
    std::string config_file_;
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> flags_;
    std::map<std::string, CLI::Option*> options_;
};

std::string fixed(double v, int digits) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void print_row(std::ostream& out, const std::string& label, const eval::MetricsReport& m) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %10s %9s %9s %9s %9s\n", label.c_str(), fixed(m.mse, 4).c_str(),
                  fixed(m.psnr_db, 3).c_str(), fixed(m.precision, 4).c_str(), fixed(m.recall, 4).c_str(),
                  fixed(m.f_measure, 4).c_str());
    out << buf;
}

void print_header(std::ostream& out, const std::string& first) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %10s %9s %9s %9s %9s\n", first.c_str(), "mse", "psnr_db", "precision",
                  "recall", "f");
    out << buf;
}

void write_reports(const eval::BenchReport& report, const PipelineConfig& cfg, const std::string& json_path,
                   const std::string& csv_path) {
    if (!json_path.empty()) write_text(json_path, eval::report_json(report, pipeline::describe(cfg)));
    if (!csv_path.empty()) write_text(csv_path, eval::report_csv(report));
}

void dump_trace(const pipeline::Trace& t, const fs::path& dir) {
    fs::create_directories(dir);
    if (t.fused) save_npy(dir / "fused.npy", *t.fused);
    if (t.magnitude) save_npy(dir / "magnitude.npy", *t.magnitude);
    if (t.membership) save_npy(dir / "membership.npy", *t.membership);
    if (t.candidates) save_raster(dir / "candidates.pgm", *t.candidates);
    if (t.edges) save_raster(dir / "edges.pgm", *t.edges);
}

struct DetectArgs {
    std::string input;
    std::string output;
    std::string from = "image";
    std::string dump_dir;
    std::string decisions;
    bool baseline = false;
};

int run_detect(const DetectArgs& a, const PipelineConfig& cfg, std::ostream& out) {
    if (a.baseline && a.from != "image") throw UsageError("--baseline needs --from image");
    if (a.baseline && !a.dump_dir.empty()) throw UsageError("--baseline has no intermediates to dump");
    pipeline::Trace trace;
    if (a.from == "image") {
        auto img = load_raster(a.input);
        if (cfg.noise) img = eval::add_noise(img, *cfg.noise);
        if (a.baseline) {
            trace.edges = pipeline::sobel_baseline(img, cfg.baseline_threshold);
        } else {
            trace = pipeline::run(img, cfg);
        }
    } else if (a.from == "fused") {
        trace = pipeline::run_from_fused(load_npy(a.input), cfg);
    } else if (a.from == "magnitude") {
        trace = pipeline::run_from_magnitude(load_npy(a.input), cfg);
    } else if (a.from == "membership") {
        trace = pipeline::run_from_membership(load_npy(a.input), cfg);
    } else {
        trace = pipeline::run_from_candidates(load_edge_map(a.input), cfg);
    }
    save_raster(a.output, *trace.edges);
    if (!a.dump_dir.empty()) dump_trace(trace, a.dump_dir);
    if (!a.decisions.empty()) {
        std::ofstream log(a.decisions);
        if (!log) throw std::runtime_error("cannot write " + a.decisions);
        edit::write_decisions(log, trace.decisions);
    }
    out << "edges: " << trace.edges->count() << " pixels -> " << a.output << "\n";
    return kExitOk;
}

struct EvalArgs {
    std::string pred;
    std::string gt;
    std::string input;
    std::string json;
    std::string csv;
    double tolerance = 2.0;
};

int run_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
    if (a.gt.empty() == a.input.empty()) throw UsageError("give exactly one of --gt or --input");
    if (!(a.tolerance >= 0.0)) throw UsageError("--tolerance must be >= 0");
    const auto pred = load_edge_map(a.pred);
    eval::BenchReport report;
    if (!a.gt.empty()) {
        report.rows.push_back({fs::path(a.pred).stem().string(), eval::evaluate(pred, load_edge_map(a.gt), a.tolerance), true});
    } else {
        err << "warning: no ground truth; mse/psnr are measured against the grayscale input\n";
        const auto gray = to_grayscale(load_raster(a.input));
        eval::MetricsReport m;
        m.mse = eval::mse(to_plane(pred), gray);
        m.psnr_db = eval::psnr_from_mse(m.mse);
        report.rows.push_back({fs::path(a.pred).stem().string(), m, false});
    }
    report.mean = eval::mean_of(report.rows);
    PipelineConfig echo;
    echo.match_tolerance = a.tolerance;
    write_reports(report, echo, a.json, a.csv);
    print_header(out, "image");
    const auto& m = report.rows.front().metrics;
    if (report.rows.front().matched) {
        print_row(out, report.rows.front().name, m);
    } else {
        out << report.rows.front().name << "  mse " << fixed(m.mse, 4) << "  psnr_db " << fixed(m.psnr_db, 3) << "\n";
    }
    return kExitOk;
}

struct NoiseArgs {
    std::string input;
    std::string output;
    std::string kind;
    double level = 0.0;
    std::uint64_t seed = 0;
};

int run_noise(const NoiseArgs& a, std::ostream& out) {
    eval::NoiseSpec spec;
    try {
        spec.kind = eval::parse_noise_kind(a.kind);
        spec.level = a.level;
        spec.seed = RandomSeed{a.seed};
        eval::validate(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    save_raster(a.output, eval::add_noise(load_raster(a.input), spec));
    out << "noise: " << eval::to_string(spec.kind) << " level " << a.level << " seed " << a.seed << " -> " << a.output
        << "\n";
    return kExitOk;
}

struct BenchArgs {
    std::string corpus;
    std::string json;
    std::string csv;
    bool baseline = false;
};

int run_bench(const BenchArgs& a, const PipelineConfig& cfg, std::ostream& out) {
    const auto corpus = eval::load_corpus(a.corpus);
    eval::Detector detector = pipeline::detect;
    if (a.baseline) {
        detector = [](const MultiChannelImage& img, const PipelineConfig& c) {
            return pipeline::sobel_baseline(img, c.baseline_threshold);
        };
    }
    const auto report = eval::bench(corpus, cfg, detector);
    write_reports(report, cfg, a.json, a.csv);
    print_header(out, "image");
    for (const auto& row : report.rows) print_row(out, row.name, row.metrics);
    print_row(out, "mean", report.mean);
    return kExitOk;
}

struct SweepArgs {
    std::string input;
    std::string gt;
    std::string json;
    std::string csv;
};

int run_sweep(const SweepArgs& a, const PipelineConfig& base, std::ostream& out) {
    auto img = load_raster(a.input);
    if (base.noise) img = eval::add_noise(img, *base.noise);
    const auto gt = load_edge_map(a.gt);
    eval::BenchReport report;
    for (const int kernel : {1, 3, 5, 7}) {
        PipelineConfig cfg = base;
        cfg.refine.median_kernel = kernel;
        report.rows.push_back(
            {"kernel=" + std::to_string(kernel), eval::evaluate(pipeline::detect(img, cfg), gt, cfg.match_tolerance), true});
    }
    report.mean = eval::mean_of(report.rows);
    write_reports(report, base, a.json, a.csv);
    print_header(out, "median");
    for (const auto& row : report.rows) print_row(out, row.name, row.metrics);
    return kExitOk;
}

struct CorpusArgs {
    std::string output;
    int count = 5;
    std::uint64_t seed = 100;
};

int run_make_corpus(const CorpusArgs& a, std::ostream& out) {
    if (a.count < 1) throw UsageError("--count must be >= 1");
    eval::SyntheticCorpusSpec spec;
    spec.count = a.count;
    spec.base_seed = a.seed;
    const auto corpus = eval::synthetic_corpus(spec);
    eval::save_corpus(corpus, a.output);
    out << "corpus: " << corpus.size() << " images -> " << a.output << "\n";
    return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"CAM-EDIT edge detection"};
    app.name("camedit");
    app.require_subcommand(1);

    DetectArgs detect;
    SettingOptions detect_settings;
    auto* detect_cmd = app.add_subcommand("detect", "detect edges in one image");
    detect_cmd->add_option("--input", detect.input, "PPM/PGM image, .npy plane, or PGM map (see --from)")->required();
    detect_cmd->add_option("--output", detect.output, "edge map (PGM, 0/255)")->required();
    detect_cmd->add_option("--from", detect.from, "stage of --input")
        ->check(CLI::IsMember({"image", "fused", "magnitude", "membership", "candidates"}));
    detect_cmd->add_option("--dump-intermediate", detect.dump_dir, "directory for per-stage outputs");
    detect_cmd->add_option("--dump-decisions", detect.decisions, "per-window test log");
    detect_cmd->add_flag("--baseline", detect.baseline, "thresholded Sobel instead of the pipeline");
    detect_settings.attach(*detect_cmd);

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "score an edge map");
    eval_cmd->add_option("--pred", ev.pred, "predicted edge map")->required();
    eval_cmd->add_option("--gt", ev.gt, "ground-truth edge map");
    eval_cmd->add_option("--input", ev.input, "original image, used when no ground truth exists");
    eval_cmd->add_option("--json", ev.json, "JSON report path");
    eval_cmd->add_option("--csv", ev.csv, "CSV report path");
    eval_cmd->add_option("--tolerance", ev.tolerance, "matching distance in pixels");

    NoiseArgs noise;
    auto* noise_cmd = app.add_subcommand("noise", "add seeded noise to an image");
    noise_cmd->add_option("--input", noise.input, "PPM/PGM image")->required();
    noise_cmd->add_option("--output", noise.output, "noisy image")->required();
    noise_cmd->add_option("--kind", noise.kind, "gaussian or salt-pepper")->required();
    noise_cmd->add_option("--level", noise.level, "sigma (0..255) or pixel fraction")->required();
    noise_cmd->add_option("--seed", noise.seed, "random seed");

    BenchArgs bench;
    SettingOptions bench_settings;
    auto* bench_cmd = app.add_subcommand("bench", "score a corpus directory");
    bench_cmd->add_option("--corpus", bench.corpus, "directory of <name>.ppm and <name>_gt.pgm")->required();
    bench_cmd->add_option("--json", bench.json, "JSON report path");
    bench_cmd->add_option("--csv", bench.csv, "CSV report path");
    bench_cmd->add_flag("--baseline", bench.baseline, "thresholded Sobel instead of the pipeline");
    bench_settings.attach(*bench_cmd);

    SweepArgs sweep;
    SettingOptions sweep_settings;
    auto* sweep_cmd = app.add_subcommand("sweep-median", "score median kernels 1, 3, 5 and 7");
    sweep_cmd->add_option("--input", sweep.input, "PPM/PGM image")->required();
    sweep_cmd->add_option("--gt", sweep.gt, "ground-truth edge map")->required();
    sweep_cmd->add_option("--json", sweep.json, "JSON report path");
    sweep_cmd->add_option("--csv", sweep.csv, "CSV report path");
    sweep_settings.attach(*sweep_cmd);

    CorpusArgs corpus;
    auto* corpus_cmd = app.add_subcommand("make-corpus", "write the synthetic mini-corpus");
    corpus_cmd->add_option("--output", corpus.output, "target directory")->required();
    corpus_cmd->add_option("--count", corpus.count, "number of images");
    corpus_cmd->add_option("--seed", corpus.seed, "seed of the first image");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "camedit: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (active == detect_cmd) return run_detect(detect, detect_settings.resolve(), out);
        if (active == eval_cmd) return run_eval(ev, out, err);
        if (active == noise_cmd) return run_noise(noise, out);
        if (active == bench_cmd) return run_bench(bench, bench_settings.resolve(), out);
        if (active == sweep_cmd) return run_sweep(sweep, sweep_settings.resolve(), out);
        return run_make_corpus(corpus, out);
    } catch (const UsageError& e) {
        err << "camedit " << active->get_name() << ": " << e.what() << "\n\n" << active->help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "camedit " << active->get_name() << ": error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace camedit::cli
