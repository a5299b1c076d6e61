#include <gtest/gtest.h>

#include <sstream>

#include "camedit/edit.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace camedit;
using namespace camedit::edit;

TEST(WindowOrigins, RegularAndClampedSweeps) {
    const auto xs = window_origins(200, 15, 5);
    ASSERT_EQ(xs.size(), 38U);
    EXPECT_EQ(xs.front(), 0);
    EXPECT_EQ(xs.back(), 185);
    EXPECT_EQ(window_origins(22, 15, 5), (std::vector<int>{0, 5, 7}));
    EXPECT_EQ(window_origins(15, 15, 5), (std::vector<int>{0}));
    EXPECT_EQ(window_origins(9, 15, 5), (std::vector<int>{0}));
}

TEST(Sweep, GridOf200Square) {
    EXPECT_EQ(sweep_windows(BinaryEdgeMap(200, 200), {}).size(), 38U * 38U);
}

TEST(Sweep, EmptyMapSkipsEverything) {
    const auto decisions = sweep_windows(BinaryEdgeMap(40, 40), {});
    for (const auto& d : decisions) {
        EXPECT_FALSE(d.result.has_value());
        EXPECT_FALSE(d.kept);
    }
    EXPECT_TRUE(edit_filter(BinaryEdgeMap(40, 40), {}).empty());
}

TEST(Sweep, SmallMapHasOneWindow) {
    const auto decisions = sweep_windows(BinaryEdgeMap(9, 6), {});
    ASSERT_EQ(decisions.size(), 1U);
    EXPECT_EQ(decisions[0].width, 9);
    EXPECT_EQ(decisions[0].height, 6);
}

TEST(EditFilter, SinglePixelIsRemoved) {
    BinaryEdgeMap m(50, 50);
    m.set(23, 31, true);
    EXPECT_TRUE(edit_filter(m, {}).empty());
}

TEST(EditFilter, DiagonalLineIsKept) {
    const auto line = fixtures::diagonal_line(1);
    EXPECT_EQ(edit_filter(line, {}), line);
}

TEST(EditFilter, AxisAlignedLineGivesDegenerateTables) {
    // Every pair on a horizontal run shares |dy| = 0, so the second column is
    // empty, the point probability is 1 and no window is dependent.
    BinaryEdgeMap m(60, 30);
    for (int x = 5; x < 55; ++x) m.set(x, 12, true);
    for (const auto& d : sweep_windows(m, {})) {
        if (!d.table) continue;
        EXPECT_EQ(d.table->col2(), 0U);
        EXPECT_EQ(d.result->p, 1.0);
    }
    EXPECT_TRUE(edit_filter(m, {}).empty());
}

TEST(EditFilter, ScatteredPointsMostlyRemoved) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto pts = fixtures::scattered_points(seed);
        EXPECT_LE(edit_filter(pts, {}).count() * 5, pts.count()) << "seed " << seed;
    }
}

TEST(EditFilter, ValidatesConfig) {
    EditConfig cfg;
    cfg.stride = 0;
    EXPECT_THROW(edit_filter(BinaryEdgeMap(5, 5), cfg), std::invalid_argument);
    cfg = {};
    cfg.window = 3;
    EXPECT_THROW(edit_filter(BinaryEdgeMap(5, 5), cfg), std::invalid_argument);
    cfg = {};
    cfg.min_points = 1;
    EXPECT_THROW(edit_filter(BinaryEdgeMap(5, 5), cfg), std::invalid_argument);
    cfg = {};
    cfg.alpha = 1.5;
    EXPECT_THROW(edit_filter(BinaryEdgeMap(5, 5), cfg), std::invalid_argument);
}

TEST(EditFilterProperty, SubsetShrinkingAndOracleEqual) {
    std::mt19937_64 rng(50);
    for (int t = 0; t < 25; ++t) {
        const auto m = testing_support::random_map(40 + static_cast<int>(rng() % 30), 40 + static_cast<int>(rng() % 30),
                                                   0.02 + 0.1 * static_cast<double>(rng() % 5), rng);
        const auto once = edit_filter(m, {});
        EXPECT_TRUE(once.subset_of(m));
        EXPECT_TRUE(edit_filter(once, {}).subset_of(once));
        EXPECT_EQ(once, oracle::edit_replay(m, {}));
    }
}

TEST(EditFilterProperty, TranslationByOneStride) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto src = fixtures::mixed(seed);
        // Keep content away from the right border so every window it touches has a shifted twin.
        BinaryEdgeMap m(fixtures::kSide, fixtures::kSide);
        BinaryEdgeMap shifted(fixtures::kSide, fixtures::kSide);
        for (const auto& p : src.points()) {
            if (p.x >= 170) continue;
            m.set(p.x, p.y, true);
            shifted.set(p.x + 5, p.y, true);
        }
        const auto a = edit_filter(m, {});
        const auto b = edit_filter(shifted, {});
        for (int y = 0; y < fixtures::kSide; ++y) {
            for (int x = 0; x < 175; ++x) EXPECT_EQ(a(x, y), b(x + 5, y)) << x << "," << y;
        }
    }
}

TEST(Decisions, LogHasOneLinePerWindow) {
    const auto line = fixtures::diagonal_line(2);
    const auto decisions = sweep_windows(line, {});
    std::ostringstream os;
    write_decisions(os, decisions);
    std::istringstream in(os.str());
    std::string header, row;
    std::getline(in, header);
    EXPECT_EQ(header, "# origin_x origin_y points method p kept");
    std::size_t rows = 0, kept = 0;
    while (std::getline(in, row)) {
        ++rows;
        if (row.back() == '1') ++kept;
    }
    EXPECT_EQ(rows, decisions.size());
    EXPECT_EQ(kept, static_cast<std::size_t>(std::count_if(decisions.begin(), decisions.end(), [](auto& d) { return d.kept; })));
    EXPECT_EQ(apply_decisions(line, decisions), edit_filter(line, {}));
}
