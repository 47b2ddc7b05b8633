// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <complex>
#include <cstdint>
#include <vector>

#include "mimo/geometry.hpp"
#include "mimo/spectral.hpp"

namespace mimo {

// One small-scale fading realization: mat(l, i) is the N x K matrix of
// channels from the terminals of cell i to the BS of cell l,
// g = h sqrt(beta) with h ~ CN(0, 1) i.i.d. across antennas.
struct ChannelRealization {
    std::size_t L = 0, N = 0, K = 0;
    std::vector<arma::cx_mat> G; // row-major [l][i]

    const arma::cx_mat& mat(std::size_t l, std::size_t i) const {
        return G[l * L + i];
    }
    arma::cx_mat& mat(std::size_t l, std::size_t i) { return G[l * L + i]; }
};

struct MonteCarloEstimate {
    double mean = 0.0;      // bits/s/Hz
    double std_error = 0.0; // sample std / sqrt(trials)
    std::size_t trials = 0;
};

// One detected data symbol split into its four constituents; `total` is the
// independently assembled g_hat^H y, so (desired + intra + inter + noise)
// must reproduce it to machine precision.
struct MrcTerms {
    std::complex<double> desired{};
    std::complex<double> intra{};
    std::complex<double> inter{};
    std::complex<double> noise{};
    std::complex<double> total{};
};

ChannelRealization draw_channels(const FadingSnapshot& snap, std::size_t N,
                                 std::uint64_t seed);

// MMSE estimates of the center cell's own channels from one pilot phase.
// Pilot reuse across cells contaminates the observation:
//   g_hat_k = beta_llk (sum_j beta_ljk + 1/(tau p_p))^-1 (sum_j g_ljk + w/sqrt(tau p_p))
// Throws InvalidPilot when p_p <= 0.
std::vector<arma::cx_vec> mmse_estimate(const ChannelRealization& real,
                                        const FadingSnapshot& snap,
                                        std::size_t tau, double p_p,
                                        std::size_t center, std::uint64_t seed);

// Detects one symbol per center-cell terminal: draws x ~ CN(0, I) for every
// terminal of every cell plus receiver noise n ~ CN(0, I_N), projects onto
// the channel estimates, and returns the decomposition.
std::vector<MrcTerms> mrc_detect(const ChannelRealization& real,
                                 const std::vector<arma::cx_vec>& estimates,
                                 double p_u, std::size_t center,
                                 std::uint64_t seed);

// Empirical ergodic rate per center-cell terminal. Each trial draws fresh
// channels and pilot noise; the estimate treats g_hat as known at the
// detector, lumps estimation error into interference, and averages over data
// symbols and receiver noise analytically:
//
//   SINR_k = p_u |g_hat_k|^4 / (p_u |g_hat_k^H (g_k - g_hat_k)|^2
//            + p_u sum_{j != k} |g_hat_k^H g_llj|^2
//            + p_u sum_{i != l} |g_hat_k^H G_li|^2 + |g_hat_k|^2)
//
// Requires trials >= 100.
std::vector<MonteCarloEstimate> empirical_ergodic_rate(
    const FadingSnapshot& snap, std::size_t N, const PowerAllocation& alloc,
    std::size_t trials, std::uint64_t seed, std::size_t center = 0);

} // namespace mimo
