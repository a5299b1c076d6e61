#include <gtest/gtest.h>

#include "camedit/edit.hpp"
#include "camedit/filter.hpp"
#include "camedit/stats.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace camedit;

TEST(NaiveCorrelate, ImpulseAndConstant) {
    ImagePlane impulse(3, 3);
    impulse(1, 1) = 1.0;
    const oracle::Kernel3x3 k{{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}};
    const auto out = oracle::naive_correlate(impulse, k);
    EXPECT_EQ(out(1, 1), 5.0);
    EXPECT_EQ(out(0, 0), 9.0);
    EXPECT_EQ(out(2, 2), 1.0);
    const oracle::Kernel3x3 avg{{{0.5, 0, 0}, {0, 0, 0}, {0, 0, 0.5}}};
    EXPECT_EQ(oracle::naive_correlate(ImagePlane(4, 4, 0.3), avg), ImagePlane(4, 4, 0.3));
}

TEST(NaiveCorrelate, ProductionIsBitIdentical) {
    std::mt19937_64 rng(60);
    std::uniform_real_distribution<double> tap(-2.0, 2.0);
    for (int t = 0; t < 20; ++t) {
        const int w = 1 + static_cast<int>(rng() % 64), h = 1 + static_cast<int>(rng() % 64);
        const auto img = testing_support::random_plane(w, h, rng);
        Kernel3 k3{};
        Kernel2 k2{};
        for (auto& row : k3) {
            for (double& v : row) v = tap(rng);
        }
        for (auto& row : k2) {
            for (double& v : row) v = tap(rng);
        }
        EXPECT_EQ(correlate3x3(img, k3), oracle::naive_correlate(img, k3));
        EXPECT_EQ(correlate2x2(img, k2), oracle::naive_correlate(img, k2));
    }
}

TEST(ExactBinomial, KnownValuesAndOverflow) {
    EXPECT_TRUE(oracle::exact_binomial(10, 5) == 252);
    EXPECT_TRUE(oracle::exact_binomial(182, 10) == oracle::exact_binomial(182, 172));
    EXPECT_TRUE(oracle::exact_binomial(3, 5) == 0);
    EXPECT_THROW(oracle::exact_binomial(400, 200), std::overflow_error);
}

TEST(EnumerateTables, UnitMargins) {
    const auto tables = oracle::enumerate_tables(1, 1, 1);
    ASSERT_EQ(tables.size(), 2U);
    EXPECT_DOUBLE_EQ(tables[0].probability, 0.5);
    EXPECT_DOUBLE_EQ(tables[1].probability, 0.5);
}

TEST(EnumerateTables, WorkedMarginsContainObservedTable) {
    const auto tables = oracle::enumerate_tables(83, 99, 172);
    EXPECT_EQ(tables.size(), 11U);
    const stats::ContingencyTable observed{83, 0, 89, 10};
    bool found = false;
    for (const auto& t : tables) {
        if (t.table == observed) {
            found = true;
            EXPECT_NEAR(t.probability, stats::fisher_point_p(observed).p, 1e-12);
        }
    }
    EXPECT_TRUE(found);
}

TEST(EnumerateTables, ZeroMarginIsSingleTable) {
    const auto tables = oracle::enumerate_tables(0, 7, 3);
    ASSERT_EQ(tables.size(), 1U);
    EXPECT_EQ(tables[0].probability, 1.0);
    EXPECT_THROW(oracle::enumerate_tables(2, 2, 5), std::invalid_argument);
}

TEST(EnumerateTables, ProductionAgreesOnEveryTable) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 30; ++t) {
        const std::uint64_t r1 = 1 + rng() % 30, r2 = 1 + rng() % 30;
        const std::uint64_t c1 = 1 + rng() % (r1 + r2 - 1);
        double total = 0.0;
        for (const auto& e : oracle::enumerate_tables(r1, r2, c1)) {
            total += e.probability;
            EXPECT_NEAR(stats::fisher_point_probability(e.table), e.probability, 1e-12 + 1e-10 * e.probability);
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

TEST(EditReplay, MatchesProductionOnSeededFixtures) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        for (const auto& map : {fixtures::diagonal_line(seed), fixtures::scattered_points(seed), fixtures::mixed(seed)}) {
            EXPECT_EQ(edit::edit_filter(map, {}), oracle::edit_replay(map, {}));
        }
    }
}

TEST(EditReplay, MatchesProductionWithOtherSettings) {
    std::mt19937_64 rng(62);
    for (int t = 0; t < 10; ++t) {
        const auto map = testing_support::random_map(61, 47, 0.15, rng);
        edit::EditConfig cfg;
        cfg.window = 11;
        cfg.stride = 4;
        cfg.k = 2;
        cfg.alpha = 0.1;
        cfg.min_points = 6;
        EXPECT_EQ(edit::edit_filter(map, cfg), oracle::edit_replay(map, {11, 4, 2, 0.1, 6}));
    }
}
