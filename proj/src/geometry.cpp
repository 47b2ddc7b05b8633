// SPDX-License-Identifier: Apache-2.0
#include "mimo/geometry.hpp"

#include <cmath>
#include <numbers>

#include "mimo/errors.hpp"
#include "mimo/rng.hpp"

namespace mimo {

std::vector<Point> hexagonal_layout(std::size_t L, double r_c) {
    if (L != 1 && L != 7)
        throw UnsupportedLayout("hexagonal_layout supports L = 1 or 7, got L = " +
                                std::to_string(L));
    std::vector<Point> bs{{0.0, 0.0}};
    if (L == 7) {
        const double d = std::sqrt(3.0) * r_c;
        for (int j = 0; j < 6; ++j) {
            const double ang = std::numbers::pi / 6.0 + j * std::numbers::pi / 3.0;
            bs.push_back({d * std::cos(ang), d * std::sin(ang)});
        }
    }
    return bs;
}

bool point_in_hexagon(Point p, Point c, double r_c) {
    // Flat-top hexagon: vertices at angles 0, 60, ..., 300 degrees; the three
    // edge-normal projections must all stay within the apothem.
    const double a = std::sqrt(3.0) / 2.0 * r_c;
    const double dx = p.x - c.x, dy = p.y - c.y;
    const double s = std::sqrt(3.0) / 2.0;
    return std::abs(dy) <= a && std::abs(s * dx + 0.5 * dy) <= a &&
           std::abs(s * dx - 0.5 * dy) <= a;
}

TerminalPlacement place_terminals(const SystemConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    TerminalPlacement out;
    out.bs = hexagonal_layout(cfg.L, cfg.r_c);
    out.pos.resize(cfg.L);

    const double a = std::sqrt(3.0) / 2.0 * cfg.r_c;
    const double rh2 = cfg.r_h * cfg.r_h;
    for (std::size_t l = 0; l < cfg.L; ++l) {
        Rng rng(derive_seed(seed, {l}));
        out.pos[l].reserve(cfg.K);
        for (std::size_t k = 0; k < cfg.K; ++k) {
            for (;;) {
                const double x = (2.0 * rng.uniform() - 1.0) * cfg.r_c;
                const double y = (2.0 * rng.uniform() - 1.0) * a;
                if (x * x + y * y < rh2) continue;
                if (!point_in_hexagon({x, y}, {0.0, 0.0}, cfg.r_c)) continue;
                out.pos[l].push_back({out.bs[l].x + x, out.bs[l].y + y});
                break;
            }
        }
    }
    return out;
}

FadingSnapshot large_scale_fading(const TerminalPlacement& placement,
                                  const SystemConfig& cfg, std::uint64_t seed) {
    const std::size_t L = placement.bs.size();
    if (L == 0 || placement.pos.size() != L)
        throw DegeneratePlacement("placement is empty or inconsistent");
    const std::size_t K = placement.pos[0].size();

    FadingSnapshot snap;
    snap.L = L;
    snap.K = K;
    snap.beta.resize(L * L * K);

    // dB-domain shadowing: 10*log10(z) ~ N(0, sigma^2).
    const double ln10_10 = std::numbers::ln10 / 10.0;
    Rng rng(seed);
    for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t i = 0; i < L; ++i) {
            if (placement.pos[i].size() != K)
                throw DegeneratePlacement("ragged placement: cell " + std::to_string(i));
            for (std::size_t k = 0; k < K; ++k) {
                const double dx = placement.pos[i][k].x - placement.bs[l].x;
                const double dy = placement.pos[i][k].y - placement.bs[l].y;
                const double r = std::hypot(dx, dy);
                if (r == 0.0)
                    throw DegeneratePlacement("terminal coincides with a BS");
                const double z = std::exp(ln10_10 * cfg.shadow_std_db * rng.normal());
                snap.at(l, i, k) = z * std::pow(r / cfg.r_h, -cfg.nu);
            }
        }
    }
    return snap;
}

} // namespace mimo
