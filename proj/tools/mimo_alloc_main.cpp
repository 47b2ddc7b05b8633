// SPDX-License-Identifier: Apache-2.0
//
// mimo-alloc: reproduces the figure-level experiments (bit energy vs sum
// spectral efficiency, pilot/data power ratio vs SNR, sum-SE distribution
// over fading snapshots) and the Monte-Carlo validation report.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimo/config.hpp"
#include "mimo/errors.hpp"
#include "mimo/harness.hpp"

namespace {

mimo::Figure figure_from_name(const std::string& name) {
    if (name == "fig1") return mimo::Figure::fig1;
    if (name == "fig2") return mimo::Figure::fig2;
    if (name == "fig3") return mimo::Figure::fig3;
    return mimo::Figure::validate;
}

// Per-figure defaults; every field can be overridden from the command line.
void apply_defaults(mimo::ExperimentSpec& spec, const mimo::SystemConfig& cfg) {
    switch (spec.figure) {
        case mimo::Figure::fig1:
        case mimo::Figure::fig2:
            spec.antenna_counts = {50, 100};
            spec.snr_grid_db = mimo::parse_snr_grid("-25:15:1");
            spec.snapshots = 1;
            break;
        case mimo::Figure::fig3:
            spec.antenna_counts = {cfg.N};
            spec.snr_grid_db = mimo::parse_snr_grid("-10:10:10");
            spec.snapshots = 2000;
            break;
        case mimo::Figure::validate:
            spec.antenna_counts = {cfg.N};
            spec.snr_grid_db = mimo::parse_snr_grid("-10:10:10");
            spec.snapshots = 1;
            break;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multicell massive-MIMO uplink pilot/data energy allocation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path = "configs/default.json";
    std::string out_dir = "out";
    std::string snr_text;
    std::vector<std::size_t> antennas;
    std::size_t snapshots = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 10000;

    app.add_option("--config", config_path, "JSON system configuration")
        ->capture_default_str();
    auto* opt_snapshots =
        app.add_option("--snapshots", snapshots, "fading snapshots to draw (fig3)");
    auto* opt_seed = app.add_option(
        "--seed", seed, "master seed (overrides MIMO_ALLOC_SEED and the config)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    auto* opt_antennas =
        app.add_option("--antennas", antennas, "antenna counts, e.g. 50,100")
            ->delimiter(',');
    auto* opt_snr =
        app.add_option("--snr-db", snr_text, "SNR grid lo:hi:step (dB)");
    app.add_option("--trials", trials, "Monte-Carlo trials (validate)")
        ->capture_default_str();

    app.add_subcommand("fig1", "bit energy vs sum spectral efficiency");
    app.add_subcommand("fig2", "pilot-to-data power ratio vs SNR");
    app.add_subcommand("fig3", "sum spectral efficiency CDF over snapshots");
    app.add_subcommand("validate", "Monte-Carlo check of the closed-form rate");

    CLI11_PARSE(app, argc, argv);

    try {
        const mimo::SystemConfig cfg = mimo::load_system_config(config_path);

        mimo::ExperimentSpec spec;
        spec.figure = figure_from_name(app.get_subcommands().front()->get_name());
        apply_defaults(spec, cfg);
        spec.output_dir = out_dir;
        spec.trials = trials;

        // Seed precedence: --seed, then MIMO_ALLOC_SEED, then the config file.
        spec.seed = cfg.seed;
        if (const char* env = std::getenv("MIMO_ALLOC_SEED")) {
            try {
                std::size_t used = 0;
                spec.seed = std::stoull(env, &used);
                if (used != std::string(env).size()) throw std::invalid_argument(env);
            } catch (const std::logic_error&) {
                std::cerr << "error: MIMO_ALLOC_SEED is not a valid integer: "
                          << env << '\n';
                return 1;
            }
        }
        if (opt_seed->count() > 0) spec.seed = seed;

        if (opt_snapshots->count() > 0) spec.snapshots = snapshots;
        if (opt_antennas->count() > 0) spec.antenna_counts = antennas;
        if (opt_snr->count() > 0) spec.snr_grid_db = mimo::parse_snr_grid(snr_text);

        for (const auto& path : mimo::run_experiment(spec, cfg))
            std::cout << "wrote " << path.string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
