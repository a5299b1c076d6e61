#include <benchmark/benchmark.h>

#include <random>

#include "camedit/cam.hpp"
#include "camedit/corpus.hpp"
#include "camedit/edit.hpp"
#include "camedit/filter.hpp"
#include "camedit/gradient.hpp"
#include "camedit/pipeline.hpp"
#include "camedit/refine.hpp"
#include "camedit/stats.hpp"

using namespace camedit;

namespace {

ImagePlane noise_plane(int side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ImagePlane p(side, side);
    for (double& v : p.values()) v = u(rng);
    return p;
}

const eval::CorpusEntry& corpus_image() {
    static const auto corpus = eval::synthetic_corpus({.count = 1});
    return corpus.front();
}

BinaryEdgeMap diagonal_with_scatter(int side) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pos(0, side - 1);
    BinaryEdgeMap map(side, side);
    for (int i = 0; i < side; ++i) map.set(i, i, true);
    for (int i = 0; i < side / 4; ++i) map.set(pos(rng), pos(rng), true);
    return map;
}

void BM_Correlate3x3(benchmark::State& state) {
    const auto img = noise_plane(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(correlate3x3(img, gradient::kSobelX));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(img.size()));
}
BENCHMARK(BM_Correlate3x3)->Arg(64)->Arg(256);

void BM_CamExtract(benchmark::State& state) {
    const auto& img = corpus_image().image;
    const auto kernels = cam::CamKernels::defaults(img.channel_count());
    for (auto _ : state) benchmark::DoNotOptimize(cam::cam_extract(img, kernels));
}
BENCHMARK(BM_CamExtract);

void BM_Sobel(benchmark::State& state) {
    const auto img = noise_plane(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(gradient::sobel(img));
}
BENCHMARK(BM_Sobel)->Arg(64)->Arg(256);

void BM_MedianFilter(benchmark::State& state) {
    const auto img = noise_plane(160, 3);
    const int size = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(refine::median_filter(img, size));
}
BENCHMARK(BM_MedianFilter)->Arg(3)->Arg(5)->Arg(7);

void BM_IndependenceTest(benchmark::State& state) {
    const stats::ContingencyTable t{.a = 21, .b = 24, .c = 21, .d = 15};
    const stats::ContingencyTable sparse{.a = 12, .b = 2, .c = 1, .d = 11};
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats::independence_test(t));
        benchmark::DoNotOptimize(stats::independence_test(sparse));
    }
}
BENCHMARK(BM_IndependenceTest);

void BM_BuildTable(benchmark::State& state) {
    const auto map = diagonal_with_scatter(15);
    const auto points = map.points();
    for (auto _ : state) benchmark::DoNotOptimize(stats::build_table(points, 3));
}
BENCHMARK(BM_BuildTable);

void BM_EditFilter(benchmark::State& state) {
    const auto map = diagonal_with_scatter(static_cast<int>(state.range(0)));
    const edit::EditConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(edit::edit_filter(map, cfg));
}
BENCHMARK(BM_EditFilter)->Arg(200)->Arg(400);

void BM_Detect(benchmark::State& state) {
    const auto& img = corpus_image().image;
    const pipeline::PipelineConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(pipeline::detect(img, cfg));
}
BENCHMARK(BM_Detect)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
