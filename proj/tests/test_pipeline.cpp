#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "camedit/corpus.hpp"
#include "camedit/pipeline.hpp"
#include "camedit/raster_io.hpp"
#include "cli.hpp"
#include "support.hpp"

using namespace camedit;
using namespace camedit::pipeline;
using testing_support::ScratchDir;

namespace {

MultiChannelImage white_square(int side = 64, int lo = 20, int hi = 44) {
    ImagePlane p(side, side);
    for (int y = lo; y < hi; ++y) {
        for (int x = lo; x < hi; ++x) p(x, y) = 1.0;
    }
    return MultiChannelImage::replicate(p, 3);
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Detect, BlackImageHasNoEdges) {
    EXPECT_TRUE(detect(MultiChannelImage::replicate(ImagePlane(40, 40), 3), {}).empty());
}

double square_contour_distance(const PixelCoord& p) {
    // True contour: the boundary between columns/rows 19|20 and 43|44.
    const double dx = std::max({19.5 - p.x, p.x - 43.5, 0.0});
    const double dy = std::max({19.5 - p.y, p.y - 43.5, 0.0});
    const double outside = std::hypot(dx, dy);
    const double inside = std::min({p.x - 19.5, 43.5 - p.x, p.y - 19.5, 43.5 - p.y});
    return outside > 0.0 ? outside : inside;
}

TEST(Detect, WhiteSquareEdgesHugTheContour) {
    const auto trace = run(white_square(), {});
    // Axis-aligned sides give degenerate displacement tables, so EDIT may drop all of them;
    // whatever survives must still sit on the outline, and the candidates must exist.
    ASSERT_FALSE(trace.candidates->empty());
    for (const auto& p : trace.candidates->points()) EXPECT_LE(square_contour_distance(p), 2.0) << p.x << "," << p.y;
    for (const auto& p : trace.edges->points()) EXPECT_LE(square_contour_distance(p), 2.0) << p.x << "," << p.y;
}

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    const double vx = bx - ax;
    const double vy = by - ay;
    const double t = std::clamp(((px - ax) * vx + (py - ay) * vy) / (vx * vx + vy * vy), 0.0, 1.0);
    return std::hypot(px - (ax + t * vx), py - (ay + t * vy));
}

TEST(Detect, DiamondEdgesHugTheContour) {
    // Pixel centres with |x-c|+|y-c| <= r are lit, so the contour sits half a pixel outside that diamond.
    constexpr int side = 64;
    constexpr double c = 31.5;
    constexpr double r = 20.0;
    ImagePlane p(side, side);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) p(x, y) = std::abs(x - c) + std::abs(y - c) <= r ? 1.0 : 0.0;
    }
    const auto edges = detect(MultiChannelImage::replicate(p, 3), {});
    ASSERT_FALSE(edges.empty());
    const double R = r + 0.5;
    for (const auto& q : edges.points()) {
        const double d = std::min({segment_distance(q.x, q.y, c - R, c, c, c - R), segment_distance(q.x, q.y, c, c - R, c + R, c),
                                   segment_distance(q.x, q.y, c + R, c, c, c + R), segment_distance(q.x, q.y, c, c + R, c - R, c)});
        EXPECT_LE(d, 2.0) << q.x << "," << q.y;
    }
}

TEST(Detect, Deterministic) {
    const auto corpus = eval::synthetic_corpus({.count = 1, .width = 80, .height = 80});
    EXPECT_EQ(detect(corpus[0].image, {}), detect(corpus[0].image, {}));
}

TEST(Detect, SingleChannelBypassesAttention) {
    std::mt19937_64 rng(80);
    const auto plane = testing_support::random_plane(30, 30, rng);
    PipelineConfig no_cam;
    no_cam.cam_enabled = false;
    const auto gray = detect(MultiChannelImage({plane}), {});
    EXPECT_EQ(gray, detect(MultiChannelImage({plane}), no_cam));
}

TEST(Detect, StageErrorsAreLabelled) {
    try {
        run(MultiChannelImage({ImagePlane(2, 2), ImagePlane(2, 2)}), {});
        FAIL() << "expected PipelineError";
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "cam");
    }
    try {
        run(MultiChannelImage::replicate(ImagePlane(2, 2), 3), {});
        FAIL() << "expected PipelineError";
    } catch (const PipelineError& e) {
        EXPECT_EQ(e.stage(), "sobel");
    }
    PipelineConfig bad;
    bad.edit.alpha = 2.0;
    EXPECT_THROW(run(white_square(), bad), PipelineError);
}

TEST(Trace, LaterStagesReproduceFromIntermediates) {
    const auto corpus = eval::synthetic_corpus({.count = 1, .width = 96, .height = 96});
    const PipelineConfig cfg;
    const auto full = run(corpus[0].image, cfg);
    EXPECT_EQ(*run_from_fused(*full.fused, cfg).edges, *full.edges);
    EXPECT_EQ(*run_from_magnitude(*full.magnitude, cfg).edges, *full.edges);
    EXPECT_EQ(*run_from_membership(*full.membership, cfg).edges, *full.edges);
    EXPECT_EQ(*run_from_candidates(*full.candidates, cfg).edges, *full.edges);
    EXPECT_TRUE(full.edges->subset_of(*full.candidates));
}

TEST(Config, DefaultsAndSettings) {
    PipelineConfig cfg;
    EXPECT_EQ(cfg.refine.median_kernel, 5);
    EXPECT_EQ(cfg.edit.k, 3);
    EXPECT_EQ(cfg.edit.alpha, 0.05);
    apply_setting(cfg, "no-median", "true");
    EXPECT_EQ(cfg.refine.median_kernel, 1);
    apply_setting(cfg, "x0", "mean");
    EXPECT_EQ(std::get<gradient::InflectionRule>(cfg.membership.x0), gradient::InflectionRule::mean);
    apply_setting(cfg, "x0", "0.25");
    EXPECT_EQ(std::get<double>(cfg.membership.x0), 0.25);
    apply_setting(cfg, "depthwise-kernel", "[[0,0,0],[0,1,0],[0,0,0]]");
    EXPECT_EQ(cfg.kernels.depthwise.size(), 3U);
    EXPECT_EQ(cfg.kernels.depthwise[2][1][1], 1.0);
    apply_setting(cfg, "noise", "salt-pepper");
    apply_setting(cfg, "noise-level", "0.1");
    apply_setting(cfg, "seed", "17");
    ASSERT_TRUE(cfg.noise.has_value());
    EXPECT_EQ(cfg.noise->seed.value, 17U);
    apply_setting(cfg, "noise", "none");
    EXPECT_FALSE(cfg.noise.has_value());
    EXPECT_THROW(apply_setting(cfg, "window", "ten"), std::invalid_argument);
    EXPECT_THROW(apply_setting(cfg, "bogus", "1"), std::invalid_argument);
    EXPECT_THROW(apply_setting(cfg, "pointwise-kernel", "[[1,2,3]]"), std::invalid_argument);
}

TEST(Config, TextDocument) {
    PipelineConfig cfg;
    apply_config_text(cfg, "# tuned\nwindow = 21\n  stride=7 # inline\n\nno-edit = yes\nmorph-order = open\n");
    EXPECT_EQ(cfg.edit.window, 21);
    EXPECT_EQ(cfg.edit.stride, 7);
    EXPECT_FALSE(cfg.edit_enabled);
    EXPECT_EQ(cfg.refine.morph_order, refine::MorphOrder::open);
    try {
        apply_config_text(cfg, "window = 15\nthis line is wrong\n", "cfg.txt");
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("cfg.txt:2"), std::string::npos);
    }
}

TEST(Config, DescribeRoundTrips) {
    PipelineConfig cfg;
    apply_config_text(cfg, "alpha = 0.01\nx0 = mean\nchannel-mix = [[1,0,0],[0,1,0],[0,0,1]]\nno-cam = true\n");
    PipelineConfig copy;
    for (const auto& [key, value] : describe(cfg)) apply_setting(copy, key, value);
    EXPECT_EQ(describe(copy), describe(cfg));
}

TEST(Cli, UsageErrorsExitTwo) {
    auto r = run_cli({});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
    r = run_cli({"detect", "--input", "a.ppm", "--output", "b.pgm", "--frobnicate"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    r = run_cli({"detect", "--input", "a.ppm", "--output", "b.pgm", "--alpha", "7"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    r = run_cli({"--help"});
    EXPECT_EQ(r.code, cli::kExitOk);
}

TEST(Cli, ProcessingErrorsExitOne) {
    ScratchDir dir("clierr");
    const auto r = run_cli({"detect", "--input", (dir / "missing.ppm").string(), "--output", (dir / "e.pgm").string()});
    EXPECT_EQ(r.code, cli::kExitFailure);
    EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, DetectEvalAndDumps) {
    ScratchDir dir("cli");
    save_raster(dir / "a.ppm", white_square());
    auto r = run_cli({"detect", "--input", (dir / "a.ppm").string(), "--output", (dir / "e.pgm").string(),
                  "--dump-intermediate", (dir / "dump").string(), "--dump-decisions", (dir / "d.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto edges = load_edge_map(dir / "e.pgm");
    EXPECT_EQ(edges, detect(white_square(), {}));
    for (const char* f : {"fused.npy", "magnitude.npy", "membership.npy", "candidates.pgm", "edges.pgm"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / "dump" / f)) << f;
    }
    EXPECT_EQ(slurp(dir / "d.txt").substr(0, 7), "# origi");

    const std::vector<std::pair<std::string, std::string>> stages{
        {"fused", "fused.npy"}, {"magnitude", "magnitude.npy"}, {"membership", "membership.npy"}, {"candidates", "candidates.pgm"}};
    for (const auto& [stage, file] : stages) {
        const auto out = dir / ("from_" + stage + ".pgm");
        r = run_cli({"detect", "--from", stage, "--input", (dir / "dump" / file).string(), "--output", out.string()});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_EQ(slurp(out), slurp(dir / "e.pgm")) << stage;
    }

    r = run_cli({"eval", "--pred", (dir / "e.pgm").string(), "--gt", (dir / "e.pgm").string(), "--json",
             (dir / "r.json").string(), "--csv", (dir / "r.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(slurp(dir / "r.json"));
    EXPECT_EQ(doc["mean"]["f"], 1.0);
    EXPECT_EQ(doc["mean"]["psnr_db"], "inf");

    r = run_cli({"eval", "--pred", (dir / "e.pgm").string(), "--input", (dir / "a.ppm").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_EQ(run_cli({"eval", "--pred", (dir / "e.pgm").string()}).code, cli::kExitUsage);
}

TEST(Cli, ConfigPrecedence) {
    ScratchDir dir("cfg");
    save_raster(dir / "a.ppm", white_square());
    {
        std::ofstream(dir / "env.cfg") << "no-edit = true\n";
        std::ofstream(dir / "file.cfg") << "median-kernel = 3\n";
    }
    ::setenv(kConfigEnvVar, (dir / "env.cfg").c_str(), 1);
    const auto r = run_cli({"detect", "--input", (dir / "a.ppm").string(), "--output", (dir / "e.pgm").string(),
                        "--config", (dir / "file.cfg").string(), "--binarize-threshold", "0.8"});
    ::unsetenv(kConfigEnvVar);
    ASSERT_EQ(r.code, 0) << r.err;
    PipelineConfig expected;
    expected.edit_enabled = false;
    expected.refine.median_kernel = 3;
    expected.refine.binarize_threshold = 0.8;
    EXPECT_EQ(load_edge_map(dir / "e.pgm"), detect(white_square(), expected));
}

TEST(Cli, NoiseBenchSweepAndCorpus) {
    ScratchDir dir("cliall");
    auto r = run_cli({"make-corpus", "--output", (dir / "c").string(), "--count", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run_cli({"bench", "--corpus", (dir / "c").string(), "--json", (dir / "b.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(slurp(dir / "b.json"));
    EXPECT_EQ(doc["images"].size(), 2U);
    EXPECT_NE(r.out.find("mean"), std::string::npos);

    r = run_cli({"noise", "--input", (dir / "c" / "synth_00.ppm").string(), "--output", (dir / "n.ppm").string(), "--kind",
             "salt-pepper", "--level", "0.1", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto first = slurp(dir / "n.ppm");
    ASSERT_EQ(run_cli({"noise", "--input", (dir / "c" / "synth_00.ppm").string(), "--output", (dir / "n.ppm").string(),
                   "--kind", "salt-pepper", "--level", "0.1", "--seed", "4"}).code, 0);
    EXPECT_EQ(slurp(dir / "n.ppm"), first);
    EXPECT_EQ(run_cli({"noise", "--input", "x", "--output", "y", "--kind", "speckle", "--level", "1"}).code, cli::kExitUsage);

    r = run_cli({"sweep-median", "--input", (dir / "n.ppm").string(), "--gt", (dir / "c" / "synth_00_gt.pgm").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* row : {"kernel=1", "kernel=3", "kernel=5", "kernel=7"}) EXPECT_NE(r.out.find(row), std::string::npos);
}
