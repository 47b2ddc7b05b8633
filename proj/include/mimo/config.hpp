// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>

namespace mimo {

// Scenario parameters. Powers and fading coefficients are noise-normalized
// (noise variance 1), so everything downstream is dimensionless SNR-like.
struct SystemConfig {
    std::size_t L = 7;           // cells
    std::size_t N = 100;         // BS antennas per cell
    std::size_t K = 10;          // terminals per cell
    std::size_t T = 200;         // coherence interval (symbols)
    double r_c = 1000.0;         // cell radius, meters (center to vertex)
    double r_h = 200.0;          // exclusion radius around each BS, meters
    double shadow_std_db = 8.0;  // lognormal shadowing std, dB
    double nu = 3.8;             // pathloss exponent
    std::uint64_t seed = 1;      // master seed; substreams derive from it

    // Throws ConfigError when an invariant is violated.
    void validate() const;
};

// Reads a JSON config. Keys (all required): cells, antennas, terminals,
// coherence_length, cell_radius_m, exclusion_radius_m, shadow_std_db,
// pathloss_exponent, seed. Unknown keys are rejected to catch typos.
SystemConfig load_system_config(const std::filesystem::path& file);

} // namespace mimo
