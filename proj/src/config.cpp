// SPDX-License-Identifier: Apache-2.0
#include "mimo/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "mimo/errors.hpp"

namespace mimo {

void SystemConfig::validate() const {
    if (L < 1) throw ConfigError("cells must be >= 1");
    if (K < 1) throw ConfigError("terminals must be >= 1");
    if (N <= K) throw ConfigError("antennas must exceed terminals");
    if (K >= T) throw ConfigError("terminals must be < coherence_length");
    if (!(r_h > 0.0)) throw ConfigError("exclusion_radius_m must be > 0");
    if (!(r_c > r_h)) throw ConfigError("cell_radius_m must exceed exclusion_radius_m");
    if (!(nu > 0.0)) throw ConfigError("pathloss_exponent must be > 0");
    if (!(shadow_std_db >= 0.0)) throw ConfigError("shadow_std_db must be >= 0");
}

SystemConfig load_system_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IOFailure("cannot open config file: " + file.string());

    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed config " + file.string() + ": " + e.what());
    }

    static const std::set<std::string> known = {
        "cells",         "antennas",           "terminals",
        "coherence_length", "cell_radius_m",   "exclusion_radius_m",
        "shadow_std_db", "pathloss_exponent",  "seed"};
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw ConfigError("unknown config key: " + key);
    }

    SystemConfig cfg;
    try {
        cfg.L = j.at("cells").get<std::size_t>();
        cfg.N = j.at("antennas").get<std::size_t>();
        cfg.K = j.at("terminals").get<std::size_t>();
        cfg.T = j.at("coherence_length").get<std::size_t>();
        cfg.r_c = j.at("cell_radius_m").get<double>();
        cfg.r_h = j.at("exclusion_radius_m").get<double>();
        cfg.shadow_std_db = j.at("shadow_std_db").get<double>();
        cfg.nu = j.at("pathloss_exponent").get<double>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad or missing key in " + file.string() + ": " + e.what());
    }
    cfg.validate();
    return cfg;
}

} // namespace mimo
