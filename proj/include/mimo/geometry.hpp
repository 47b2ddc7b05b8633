// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mimo/config.hpp"

namespace mimo {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Terminal positions in the global frame; bs[l] is the BS of cell l and
// pos[l][k] the k-th terminal served by it.
struct TerminalPlacement {
    std::vector<Point> bs;
    std::vector<std::vector<Point>> pos;
};

// Large-scale fading tensor: beta(l, i, k) is the gain from terminal k of
// cell i to the BS of cell l. Constant over a snapshot; small-scale fading
// is drawn on top of it by the link simulation.
struct FadingSnapshot {
    std::size_t L = 0;
    std::size_t K = 0;
    std::vector<double> beta; // row-major [l][i][k]

    double& at(std::size_t l, std::size_t i, std::size_t k) {
        return beta[(l * L + i) * K + k];
    }
    double at(std::size_t l, std::size_t i, std::size_t k) const {
        return beta[(l * L + i) * K + k];
    }
};

// Flat-top hexagonal layout, center cell at the origin. Supports L = 1 and
// L = 7 (center plus one interfering ring at distance sqrt(3)*r_c); other
// values throw UnsupportedLayout.
std::vector<Point> hexagonal_layout(std::size_t L, double r_c);

// True when p lies inside the flat-top hexagon of circumradius r_c centered
// at c (boundary counts as inside).
bool point_in_hexagon(Point p, Point c, double r_c);

// Uniform placement over {hexagon minus the r_h disk around the BS} by
// rejection sampling; deterministic for a given seed.
TerminalPlacement place_terminals(const SystemConfig& cfg, std::uint64_t seed);

// beta = z / (r/r_h)^nu with 10*log10(z) ~ N(0, shadow_std_db^2), drawn
// independently per (l, i, k) link. Throws DegeneratePlacement if a terminal
// coincides with a BS.
FadingSnapshot large_scale_fading(const TerminalPlacement& placement,
                                  const SystemConfig& cfg, std::uint64_t seed);

} // namespace mimo
