// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <armadillo>
#include <cmath>
#include <stdexcept>

#include "mimo/errors.hpp"
#include "mimo/montecarlo.hpp"
#include "mimo/optimizer.hpp"
#include "mimo/rng.hpp"
#include "mimo/spectral.hpp"

using namespace mimo;

namespace {

// Hand-built two-cell fading tensor; no geometry involved.
FadingSnapshot toy_snapshot() {
    FadingSnapshot s;
    s.L = 2;
    s.K = 3;
    s.beta = {
        // l = 0 row: own cell then interferers
        1.5, 2.0, 0.8,  // i = 0
        0.7, 0.3, 0.2,  // i = 1
        // l = 1 row (unused by center-cell math, still drawn)
        0.4, 0.1, 0.6,  // i = 0
        1.2, 0.9, 1.1,  // i = 1
    };
    return s;
}

FadingSnapshot single_cell(double beta) {
    FadingSnapshot s;
    s.L = 1;
    s.K = 1;
    s.beta = {beta};
    return s;
}

} // namespace

TEST_CASE("channel draws have the requested shape and statistics") {
    const FadingSnapshot snap = toy_snapshot();
    const std::size_t N = 8, trials = 20000;

    arma::mat pow_sum(snap.L * snap.L, snap.K, arma::fill::zeros);
    arma::mat re_sum(snap.L * snap.L, snap.K, arma::fill::zeros);
    std::complex<double> cross(0.0, 0.0); // antenna 0 vs 1 of link (0,0,0)
    for (std::size_t t = 0; t < trials; ++t) {
        const ChannelRealization real = draw_channels(snap, N, 9000 + t);
        REQUIRE(real.G.size() == snap.L * snap.L);
        for (std::size_t l = 0; l < snap.L; ++l)
            for (std::size_t i = 0; i < snap.L; ++i) {
                const arma::cx_mat& m = real.mat(l, i);
                REQUIRE(m.n_rows == N);
                REQUIRE(m.n_cols == snap.K);
                for (std::size_t k = 0; k < snap.K; ++k) {
                    pow_sum(l * snap.L + i, k) +=
                        arma::accu(arma::square(arma::abs(m.col(k))));
                    re_sum(l * snap.L + i, k) +=
                        arma::accu(arma::square(arma::real(m.col(k))));
                }
            }
        cross += real.mat(0, 0)(0, 0) * std::conj(real.mat(0, 0)(1, 0));
    }

    const double samples = static_cast<double>(trials * N);
    for (std::size_t l = 0; l < snap.L; ++l)
        for (std::size_t i = 0; i < snap.L; ++i)
            for (std::size_t k = 0; k < snap.K; ++k) {
                const double beta = snap.at(l, i, k);
                CHECK(pow_sum(l * snap.L + i, k) / samples ==
                      doctest::Approx(beta).epsilon(0.02));
                CHECK(re_sum(l * snap.L + i, k) / samples ==
                      doctest::Approx(0.5 * beta).epsilon(0.03));
            }
    CHECK(std::abs(cross) / (static_cast<double>(trials) * snap.at(0, 0, 0)) <
          0.03);

    // Same seed, same draw.
    const ChannelRealization r1 = draw_channels(snap, N, 42);
    const ChannelRealization r2 = draw_channels(snap, N, 42);
    for (std::size_t idx = 0; idx < r1.G.size(); ++idx)
        CHECK(arma::approx_equal(r1.G[idx], r2.G[idx], "absdiff", 0.0));
}

TEST_CASE("channel estimates converge to the channel as pilots dominate") {
    FadingSnapshot snap;
    snap.L = 1;
    snap.K = 2;
    snap.beta = {2.0, 0.5};
    const std::size_t N = 64;
    const ChannelRealization real = draw_channels(snap, N, 7);
    const auto est = mmse_estimate(real, snap, 2, 1e10, 0, 8);
    REQUIRE(est.size() == snap.K);
    for (std::size_t k = 0; k < snap.K; ++k) {
        const arma::cx_vec g = real.mat(0, 0).col(k);
        CHECK(arma::norm(est[k] - g) / arma::norm(g) < 1e-3);
    }
}

TEST_CASE("estimate power matches the contaminated MMSE variance") {
    const FadingSnapshot snap = toy_snapshot();
    const std::size_t N = 16, tau = 3, trials = 3000;
    const double p_p = 2.0;
    const double tau_pp = static_cast<double>(tau) * p_p;

    std::vector<double> acc(snap.K, 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
        const ChannelRealization real = draw_channels(snap, N, 100 + t);
        const auto est = mmse_estimate(real, snap, tau, p_p, 0, 5000 + t);
        for (std::size_t k = 0; k < snap.K; ++k)
            acc[k] += std::pow(arma::norm(est[k]), 2);
    }
    for (std::size_t k = 0; k < snap.K; ++k) {
        const double own = snap.at(0, 0, k);
        double denom = 1.0 / tau_pp;
        for (std::size_t i = 0; i < snap.L; ++i) denom += snap.at(0, i, k);
        const double expected = own * own / denom;
        CHECK(acc[k] / static_cast<double>(trials * N) ==
              doctest::Approx(expected).epsilon(0.03));
    }
}

TEST_CASE("estimation error is uncorrelated with the estimate") {
    const FadingSnapshot snap = single_cell(2.0);
    const std::size_t N = 16, trials = 3000; // tau = 1, p_p = 2 below

    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
        const ChannelRealization real = draw_channels(snap, N, 200 + t);
        const auto est = mmse_estimate(real, snap, 1, 2.0, 0, 7000 + t);
        acc += arma::cdot(est[0], real.mat(0, 0).col(0) - est[0]);
    }
    CHECK(std::abs(acc) / static_cast<double>(trials * N) < 0.015);

    const ChannelRealization real = draw_channels(snap, N, 1);
    CHECK_THROWS_AS(mmse_estimate(real, snap, 1, 0.0, 0, 2), InvalidPilot);
    CHECK_THROWS_AS(mmse_estimate(real, snap, 0, 1.0, 0, 2),
                    std::invalid_argument);
}

TEST_CASE("detected symbol decomposes exactly into its four parts") {
    const FadingSnapshot snap = toy_snapshot();
    const std::size_t N = 12;
    const ChannelRealization real = draw_channels(snap, N, 77);
    const auto est = mmse_estimate(real, snap, 3, 1.3, 0, 78);
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto terms = mrc_detect(real, est, 0.8, 0, s);
        REQUIRE(terms.size() == snap.K);
        for (const MrcTerms& t : terms) {
            const std::complex<double> sum =
                t.desired + t.intra + t.inter + t.noise;
            const double scale = std::abs(t.desired) + std::abs(t.intra) +
                                 std::abs(t.inter) + std::abs(t.noise) + 1.0;
            REQUIRE(std::abs(sum - t.total) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("silent terminals leave only noise at the detector") {
    const FadingSnapshot snap = toy_snapshot();
    const ChannelRealization real = draw_channels(snap, 6, 3);
    const auto est = mmse_estimate(real, snap, 3, 1.0, 0, 4);
    const auto terms = mrc_detect(real, est, 0.0, 0, 5);
    for (const MrcTerms& t : terms) {
        CHECK(std::abs(t.desired) == 0.0);
        CHECK(std::abs(t.intra) == 0.0);
        CHECK(std::abs(t.inter) == 0.0);
        CHECK(std::abs(t.total - t.noise) < 1e-14);
    }
    CHECK_THROWS_AS(mrc_detect(real, est, -0.1, 0, 5), std::invalid_argument);
}

TEST_CASE("term powers match their conditional expectations") {
    // Hold one realization and its estimates fixed, average over data symbols
    // and receiver noise only; every term's second moment is then computable
    // in closed form from the realization itself.
    const FadingSnapshot snap = toy_snapshot();
    const std::size_t N = 24, trials = 2000;
    const double p_u = 0.6;
    const ChannelRealization real = draw_channels(snap, N, 11);
    const auto est = mmse_estimate(real, snap, 3, 2.5, 0, 12);

    arma::vec desired(snap.K, arma::fill::zeros),
        inter(snap.K, arma::fill::zeros), noise(snap.K, arma::fill::zeros);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto terms = mrc_detect(real, est, p_u, 0, 40000 + t);
        for (std::size_t k = 0; k < snap.K; ++k) {
            desired(k) += std::norm(terms[k].desired);
            inter(k) += std::norm(terms[k].inter);
            noise(k) += std::norm(terms[k].noise);
        }
    }
    for (std::size_t k = 0; k < snap.K; ++k) {
        const arma::cx_vec& gh = est[k];
        const double e_desired =
            p_u * std::norm(arma::cdot(gh, real.mat(0, 0).col(k)));
        const double e_inter =
            p_u * std::pow(arma::norm(gh.t() * real.mat(0, 1)), 2);
        const double e_noise = std::pow(arma::norm(gh), 2);
        CHECK(desired(k) / trials == doctest::Approx(e_desired).epsilon(0.08));
        CHECK(inter(k) / trials == doctest::Approx(e_inter).epsilon(0.08));
        CHECK(noise(k) / trials == doctest::Approx(e_noise).epsilon(0.08));
    }
}

TEST_CASE("empirical rate brackets the closed form from above") {
    SystemConfig cfg;
    cfg.L = 7;
    cfg.K = 5;
    cfg.N = 50;
    const FadingSnapshot snap =
        large_scale_fading(place_terminals(cfg, 21), cfg, 22);
    const double P = std::pow(10.0, 0.0 / 10.0) * static_cast<double>(cfg.T);
    const RateCoefficients co = rate_coefficients(snap, cfg.N);
    const AllocationSolution sol = solve_p2(co, P, cfg.T, cfg.K);
    const PowerAllocation alloc{sol.tau_star, sol.p_p_star, sol.p_u_star};

    const auto mc = empirical_ergodic_rate(snap, cfg.N, alloc, 400, 77);
    REQUIRE(mc.size() == cfg.K);
    for (std::size_t k = 0; k < cfg.K; ++k) {
        const double closed = achievable_rate(co.row(k), alloc);
        CHECK(mc[k].trials == 400);
        CHECK(mc[k].std_error > 0.0);
        // The closed form is an achievable lower bound...
        CHECK(closed <= mc[k].mean + 2.0 * mc[k].std_error);
        // ...and a tight one for MRC at this operating point.
        CHECK(mc[k].mean / closed < 1.25);
    }
}

TEST_CASE("empirical rate is deterministic in the seed") {
    const FadingSnapshot snap = toy_snapshot();
    const PowerAllocation alloc{3, 1.1, 0.4};
    const auto a = empirical_ergodic_rate(snap, 10, alloc, 150, 5);
    const auto b = empirical_ergodic_rate(snap, 10, alloc, 150, 5);
    const auto c = empirical_ergodic_rate(snap, 10, alloc, 150, 6);
    for (std::size_t k = 0; k < snap.K; ++k) {
        CHECK(a[k].mean == b[k].mean);
        CHECK(a[k].std_error == b[k].std_error);
    }
    CHECK(a[0].mean != c[0].mean);
}

TEST_CASE("standard error shrinks like one over root trials") {
    const FadingSnapshot snap = single_cell(1.0);
    const PowerAllocation alloc{1, 2.0, 1.0};
    const auto small = empirical_ergodic_rate(snap, 32, alloc, 400, 9);
    const auto large = empirical_ergodic_rate(snap, 32, alloc, 6400, 10);
    const double ratio = small[0].std_error / large[0].std_error;
    CHECK(ratio > 3.2);
    CHECK(ratio < 4.8);
}

TEST_CASE("link simulation rejects unusable parameters") {
    const FadingSnapshot snap = toy_snapshot();
    CHECK_THROWS_AS(empirical_ergodic_rate(snap, 8, {3, 1.0, 0.5}, 99, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(empirical_ergodic_rate(snap, 8, {3, 0.0, 0.5}, 100, 1),
                    InvalidPilot);
    CHECK_THROWS_AS(empirical_ergodic_rate(snap, 8, {2, 1.0, 0.5}, 100, 1),
                    std::invalid_argument);
}
