#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "camedit/image.hpp"

namespace fixtures {

inline constexpr int kSide = 200;

/// 80-pixel 45-degree segment at a seeded offset.
inline camedit::BinaryEdgeMap diagonal_line(std::uint64_t seed, int length = 80) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> start(10, kSide - length - 10);
    const int x0 = start(rng), y0 = start(rng);
    camedit::BinaryEdgeMap m(kSide, kSide);
    for (int i = 0; i < length; ++i) m.set(x0 + i, y0 + i, true);
    return m;
}

/// `count` distinct pixels drawn uniformly.
inline camedit::BinaryEdgeMap scattered_points(std::uint64_t seed, int count = 40) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(0, kSide - 1);
    camedit::BinaryEdgeMap m(kSide, kSide);
    while (static_cast<int>(m.count()) < count) m.set(coord(rng), coord(rng), true);
    return m;
}

/// Line, scatter and a one-pixel ring together.
inline camedit::BinaryEdgeMap mixed(std::uint64_t seed) {
    camedit::BinaryEdgeMap m = diagonal_line(seed);
    for (const auto& p : scattered_points(seed + 1).points()) m.set(p.x, p.y, true);
    for (int deg = 0; deg < 360; ++deg) {
        const double a = deg * 3.14159265358979323846 / 180.0;
        m.set(140 + static_cast<int>(std::lround(30 * std::cos(a))), 60 + static_cast<int>(std::lround(30 * std::sin(a))),
              true);
    }
    return m;
}

}  // namespace fixtures
