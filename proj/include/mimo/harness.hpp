// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mimo/config.hpp"
#include "mimo/geometry.hpp"
#include "mimo/optimizer.hpp"

namespace mimo {

enum class Figure { fig1, fig2, fig3, validate };

// One experiment request, fully resolved (no defaults left to fill). Figures
// re-derive every random stream from `seed`, so (spec, config) -> output is
// a pure function and two identical runs produce byte-identical CSV.
struct ExperimentSpec {
    Figure figure = Figure::fig1;
    std::vector<std::size_t> antenna_counts;
    std::vector<double> snr_grid_db; // strictly increasing
    std::size_t snapshots = 1;       // fig3 ensemble size
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "out";
    std::size_t trials = 10000; // validate only

    void validate() const; // throws std::invalid_argument
};

struct ResultRow {
    std::size_t snapshot_id = 0;
    std::size_t N = 0;
    double snr_db = 0.0;
    double s_opt = 0.0;
    double s_baseline = 0.0;
    double eta_opt = 0.0;
    double eta_baseline = 0.0;
    double p_u_star = 0.0;
    double p_p_star = 0.0;
    std::size_t tau_star = 0;
    double budget_rel_err = 0.0; // |tau p_p + (T-tau) p_u - P| / P
};

// Snapshot `id` under master seed: placement and shadowing use the derived
// substreams {id, 1} and {id, 2}.
FadingSnapshot snapshot_for(const SystemConfig& cfg, std::uint64_t master,
                            std::size_t id);

// "lo:hi:step" -> {lo, lo+step, ..., hi}; a bare "x" means the single point.
std::vector<double> parse_snr_grid(const std::string& text);

// Shortest round-trip decimal representation ('.' decimal point, no locale).
std::string format_double(double v);

// Each runner writes its CSV artifacts under spec.output_dir and returns the
// paths written. Throws IOFailure when the directory or a file cannot be
// written.
std::vector<std::filesystem::path> run_fig1(const ExperimentSpec& spec,
                                            const SystemConfig& cfg);
std::vector<std::filesystem::path> run_fig2(const ExperimentSpec& spec,
                                            const SystemConfig& cfg);
std::vector<std::filesystem::path> run_fig3(const ExperimentSpec& spec,
                                            const SystemConfig& cfg);
std::vector<std::filesystem::path> run_validate(const ExperimentSpec& spec,
                                                const SystemConfig& cfg);
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec,
                                                  const SystemConfig& cfg);

} // namespace mimo
