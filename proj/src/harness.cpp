// SPDX-License-Identifier: Apache-2.0
#include "mimo/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "mimo/errors.hpp"
#include "mimo/montecarlo.hpp"
#include "mimo/rng.hpp"

namespace mimo {

namespace {

double snr_db_to_budget(double snr_db, std::size_t T) {
    return std::pow(10.0, snr_db / 10.0) * static_cast<double>(T);
}

ResultRow make_row(std::size_t id, std::size_t N, double snr_db, double P,
                   std::size_t T, const AllocationSolution& opt,
                   const AllocationSolution& base) {
    ResultRow r;
    r.snapshot_id = id;
    r.N = N;
    r.snr_db = snr_db;
    r.s_opt = opt.s_star;
    r.s_baseline = base.s_star;
    r.eta_opt = opt.eta_star;
    r.eta_baseline = base.eta_star;
    r.p_u_star = opt.p_u_star;
    r.p_p_star = opt.p_p_star;
    r.tau_star = opt.tau_star;
    const double spent = static_cast<double>(opt.tau_star) * opt.p_p_star +
                         static_cast<double>(T - opt.tau_star) * opt.p_u_star;
    r.budget_rel_err = P > 0.0 ? std::abs(spent - P) / P : 0.0;
    return r;
}

class CsvFile {
  public:
    CsvFile(const std::filesystem::path& dir, const std::string& name) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw IOFailure("cannot create output directory " + dir.string() +
                            ": " + ec.message());
        path_ = dir / name;
        out_.open(path_, std::ios::binary | std::ios::trunc);
        if (!out_) throw IOFailure("cannot open " + path_.string() + " for writing");
    }

    void line(const std::string& s) {
        out_ << s << '\n';
        if (!out_) throw IOFailure("write failed on " + path_.string());
    }

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
    std::ofstream out_;
};

std::string base_header() {
    return "snapshot_id,N,snr_db,s_opt,s_baseline,eta_opt,eta_baseline,"
           "p_u_star,p_p_star,tau_star,budget_rel_err";
}

std::string base_fields(const ResultRow& r) {
    std::string s;
    s += std::to_string(r.snapshot_id);
    s += ',';
    s += std::to_string(r.N);
    s += ',';
    s += format_double(r.snr_db);
    s += ',';
    s += format_double(r.s_opt);
    s += ',';
    s += format_double(r.s_baseline);
    s += ',';
    s += format_double(r.eta_opt);
    s += ',';
    s += format_double(r.eta_baseline);
    s += ',';
    s += format_double(r.p_u_star);
    s += ',';
    s += format_double(r.p_p_star);
    s += ',';
    s += std::to_string(r.tau_star);
    s += ',';
    s += format_double(r.budget_rel_err);
    return s;
}

void check_antennas(const ExperimentSpec& spec, const SystemConfig& cfg) {
    for (std::size_t n : spec.antenna_counts)
        if (n <= cfg.K)
            throw std::invalid_argument(
                "antenna count must exceed the terminal count");
}

// Index of the 0.05 quantile (order statistic at rank ceil(0.05 n)).
std::size_t q05_index(std::size_t n) {
    const std::size_t rank =
        static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(n)));
    return rank == 0 ? 0 : rank - 1;
}

} // namespace

void ExperimentSpec::validate() const {
    if (antenna_counts.empty())
        throw std::invalid_argument("antenna_counts must be nonempty");
    if (snr_grid_db.empty())
        throw std::invalid_argument("snr_grid_db must be nonempty");
    for (std::size_t i = 1; i < snr_grid_db.size(); ++i)
        if (!(snr_grid_db[i - 1] < snr_grid_db[i]))
            throw std::invalid_argument("snr_grid_db must be strictly increasing");
    if (snapshots < 1) throw std::invalid_argument("snapshots must be >= 1");
    if (trials < 100) throw std::invalid_argument("trials must be >= 100");
}

FadingSnapshot snapshot_for(const SystemConfig& cfg, std::uint64_t master,
                            std::size_t id) {
    const TerminalPlacement placement =
        place_terminals(cfg, derive_seed(master, {id, 1}));
    return large_scale_fading(placement, cfg, derive_seed(master, {id, 2}));
}

std::vector<double> parse_snr_grid(const std::string& text) {
    const auto bad = [&] {
        return std::invalid_argument("bad SNR grid '" + text +
                                     "' (expected lo:hi:step)");
    };
    std::vector<double> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(':', pos);
        const std::string tok =
            text.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() == 1) return parts;
    if (parts.size() != 3) throw bad();
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(step > 0.0) || hi < lo) throw bad();
    std::vector<double> grid;
    const double n = std::floor((hi - lo) / step + 1e-9);
    for (double i = 0.0; i <= n; ++i) grid.push_back(lo + i * step);
    return grid;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::filesystem::path> run_fig1(const ExperimentSpec& spec,
                                            const SystemConfig& cfg) {
    spec.validate();
    check_antennas(spec, cfg);
    const FadingSnapshot snap = snapshot_for(cfg, spec.seed, 0);

    std::vector<ResultRow> rows;
    for (std::size_t N : spec.antenna_counts) {
        const RateCoefficients coeffs = rate_coefficients(snap, N);
        for (double snr_db : spec.snr_grid_db) {
            const double P = snr_db_to_budget(snr_db, cfg.T);
            rows.push_back(make_row(0, N, snr_db, P, cfg.T,
                                    solve_p2(coeffs, P, cfg.T, cfg.K),
                                    equal_power_baseline(coeffs, P, cfg.T, cfg.K)));
        }
    }

    // Mark the minimum-bit-energy row of each curve.
    std::vector<int> min_opt(rows.size(), 0), min_base(rows.size(), 0);
    for (std::size_t N : spec.antenna_counts) {
        std::size_t io = rows.size(), ib = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].N != N) continue;
            if (io == rows.size() || rows[i].eta_opt < rows[io].eta_opt) io = i;
            if (ib == rows.size() || rows[i].eta_baseline < rows[ib].eta_baseline)
                ib = i;
        }
        if (io < rows.size()) min_opt[io] = 1;
        if (ib < rows.size()) min_base[ib] = 1;
    }

    CsvFile csv(spec.output_dir, "fig1.csv");
    csv.line(base_header() + ",min_eta_opt,min_eta_baseline");
    for (std::size_t i = 0; i < rows.size(); ++i)
        csv.line(base_fields(rows[i]) + ',' + std::to_string(min_opt[i]) + ',' +
                 std::to_string(min_base[i]));
    return {csv.path()};
}

std::vector<std::filesystem::path> run_fig2(const ExperimentSpec& spec,
                                            const SystemConfig& cfg) {
    spec.validate();
    check_antennas(spec, cfg);
    const FadingSnapshot snap = snapshot_for(cfg, spec.seed, 0);

    CsvFile csv(spec.output_dir, "fig2.csv");
    csv.line(base_header() + ",power_ratio,train_energy_ratio");
    for (std::size_t N : spec.antenna_counts) {
        const RateCoefficients coeffs = rate_coefficients(snap, N);
        for (double snr_db : spec.snr_grid_db) {
            const double P = snr_db_to_budget(snr_db, cfg.T);
            const AllocationSolution opt = solve_p2(coeffs, P, cfg.T, cfg.K);
            const AllocationSolution base =
                equal_power_baseline(coeffs, P, cfg.T, cfg.K);
            const ResultRow r = make_row(0, N, snr_db, P, cfg.T, opt, base);
            const double ratio = opt.p_p_star / opt.p_u_star;
            const double energy =
                static_cast<double>(opt.tau_star) * opt.p_p_star /
                (static_cast<double>(cfg.T - opt.tau_star) * opt.p_u_star);
            csv.line(base_fields(r) + ',' + format_double(ratio) + ',' +
                     format_double(energy));
        }
    }
    return {csv.path()};
}

std::vector<std::filesystem::path> run_fig3(const ExperimentSpec& spec,
                                            const SystemConfig& cfg) {
    spec.validate();
    check_antennas(spec, cfg);

    // Snapshots are the expensive part; generate once, reuse across N and SNR.
    std::vector<FadingSnapshot> snaps;
    snaps.reserve(spec.snapshots);
    for (std::size_t s = 0; s < spec.snapshots; ++s)
        snaps.push_back(snapshot_for(cfg, spec.seed, s));

    CsvFile csv(spec.output_dir, "fig3.csv");
    csv.line(base_header());
    CsvFile cdf(spec.output_dir, "fig3_cdf.csv");
    cdf.line("N,snr_db,rank,cdf,s_opt_sorted,s_baseline_sorted");
    CsvFile summary(spec.output_dir, "fig3_summary.csv");
    summary.line("N,snr_db,q05_opt,q05_baseline,q05_ratio");

    for (std::size_t N : spec.antenna_counts) {
        std::vector<RateCoefficients> coeffs;
        coeffs.reserve(snaps.size());
        for (const FadingSnapshot& snap : snaps)
            coeffs.push_back(rate_coefficients(snap, N));
        for (double snr_db : spec.snr_grid_db) {
            const double P = snr_db_to_budget(snr_db, cfg.T);
            std::vector<double> s_opt(snaps.size()), s_base(snaps.size());
            for (std::size_t s = 0; s < snaps.size(); ++s) {
                const AllocationSolution opt = solve_p2(coeffs[s], P, cfg.T, cfg.K);
                const AllocationSolution base =
                    equal_power_baseline(coeffs[s], P, cfg.T, cfg.K);
                s_opt[s] = opt.s_star;
                s_base[s] = base.s_star;
                csv.line(base_fields(make_row(s, N, snr_db, P, cfg.T, opt, base)));
            }
            std::sort(s_opt.begin(), s_opt.end());
            std::sort(s_base.begin(), s_base.end());
            const double n = static_cast<double>(snaps.size());
            for (std::size_t r = 0; r < snaps.size(); ++r)
                cdf.line(std::to_string(N) + ',' + format_double(snr_db) + ',' +
                         std::to_string(r + 1) + ',' +
                         format_double(static_cast<double>(r + 1) / n) + ',' +
                         format_double(s_opt[r]) + ',' + format_double(s_base[r]));
            const std::size_t q = q05_index(snaps.size());
            summary.line(std::to_string(N) + ',' + format_double(snr_db) + ',' +
                         format_double(s_opt[q]) + ',' + format_double(s_base[q]) +
                         ',' + format_double(s_opt[q] / s_base[q]));
        }
    }
    return {csv.path(), cdf.path(), summary.path()};
}

std::vector<std::filesystem::path> run_validate(const ExperimentSpec& spec,
                                                const SystemConfig& cfg) {
    spec.validate();
    check_antennas(spec, cfg);
    const FadingSnapshot snap = snapshot_for(cfg, spec.seed, 0);

    CsvFile csv(spec.output_dir, "validate.csv");
    csv.line("N,snr_db,terminal,closed_form,empirical,std_error,ratio,trials,seed");
    for (std::size_t N : spec.antenna_counts) {
        const RateCoefficients coeffs = rate_coefficients(snap, N);
        for (std::size_t si = 0; si < spec.snr_grid_db.size(); ++si) {
            const double snr_db = spec.snr_grid_db[si];
            const double P = snr_db_to_budget(snr_db, cfg.T);
            const AllocationSolution opt = solve_p2(coeffs, P, cfg.T, cfg.K);
            const PowerAllocation alloc{opt.tau_star, opt.p_p_star, opt.p_u_star};
            const std::uint64_t mc_seed = derive_seed(spec.seed, {0, 3, si, N});
            const std::vector<MonteCarloEstimate> est =
                empirical_ergodic_rate(snap, N, alloc, spec.trials, mc_seed);
            for (std::size_t k = 0; k < coeffs.K(); ++k) {
                const double closed = achievable_rate(coeffs.row(k), alloc);
                csv.line(std::to_string(N) + ',' + format_double(snr_db) + ',' +
                         std::to_string(k) + ',' + format_double(closed) + ',' +
                         format_double(est[k].mean) + ',' +
                         format_double(est[k].std_error) + ',' +
                         format_double(est[k].mean / closed) + ',' +
                         std::to_string(est[k].trials) + ',' +
                         std::to_string(mc_seed));
            }
        }
    }
    return {csv.path()};
}

std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec,
                                                  const SystemConfig& cfg) {
    switch (spec.figure) {
        case Figure::fig1: return run_fig1(spec, cfg);
        case Figure::fig2: return run_fig2(spec, cfg);
        case Figure::fig3: return run_fig3(spec, cfg);
        case Figure::validate: return run_validate(spec, cfg);
    }
    throw std::invalid_argument("unknown figure");
}

} // namespace mimo
