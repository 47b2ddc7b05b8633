// SPDX-License-Identifier: Apache-2.0
#include "mimo/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

#include "mimo/errors.hpp"
#include "mimo/rng.hpp"

namespace mimo {

namespace {

// MMSE scaling factor for terminal k of the center cell.
double mmse_gain(const FadingSnapshot& snap, std::size_t center, std::size_t k,
                 double tau_pp) {
    double denom = 1.0 / tau_pp;
    for (std::size_t i = 0; i < snap.L; ++i) denom += snap.at(center, i, k);
    return snap.at(center, center, k) / denom;
}

} // namespace

ChannelRealization draw_channels(const FadingSnapshot& snap, std::size_t N,
                                 std::uint64_t seed) {
    ChannelRealization out;
    out.L = snap.L;
    out.N = N;
    out.K = snap.K;
    out.G.resize(snap.L * snap.L);

    Rng rng(seed);
    for (std::size_t l = 0; l < snap.L; ++l) {
        for (std::size_t i = 0; i < snap.L; ++i) {
            arma::cx_mat& m = out.mat(l, i);
            m.set_size(N, snap.K);
            for (std::size_t k = 0; k < snap.K; ++k) {
                const double amp = std::sqrt(snap.at(l, i, k));
                for (std::size_t n = 0; n < N; ++n)
                    m(n, k) = amp * rng.cnormal();
            }
        }
    }
    return out;
}

std::vector<arma::cx_vec> mmse_estimate(const ChannelRealization& real,
                                        const FadingSnapshot& snap,
                                        std::size_t tau, double p_p,
                                        std::size_t center, std::uint64_t seed) {
    if (!(p_p > 0.0)) throw InvalidPilot("pilot power must be positive");
    if (tau < snap.K)
        throw std::invalid_argument("tau must be >= K for orthogonal pilots");

    const double tau_pp = static_cast<double>(tau) * p_p;
    const double noise_amp = 1.0 / std::sqrt(tau_pp);

    Rng rng(seed);
    std::vector<arma::cx_vec> est(snap.K);
    for (std::size_t k = 0; k < snap.K; ++k) {
        arma::cx_vec y(real.N, arma::fill::zeros);
        for (std::size_t i = 0; i < snap.L; ++i)
            y += real.mat(center, i).col(k);
        for (std::size_t n = 0; n < real.N; ++n)
            y(n) += noise_amp * rng.cnormal();
        est[k] = mmse_gain(snap, center, k, tau_pp) * y;
    }
    return est;
}

std::vector<MrcTerms> mrc_detect(const ChannelRealization& real,
                                 const std::vector<arma::cx_vec>& estimates,
                                 double p_u, std::size_t center,
                                 std::uint64_t seed) {
    if (p_u < 0.0) throw std::invalid_argument("data power must be >= 0");
    const std::size_t L = real.L, K = real.K, N = real.N;
    const double amp = std::sqrt(p_u);

    Rng rng(seed);
    arma::cx_mat x(K, L); // x(j, i): symbol of terminal j in cell i
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < K; ++j) x(j, i) = rng.cnormal();
    arma::cx_vec n(N);
    for (std::size_t m = 0; m < N; ++m) n(m) = rng.cnormal();

    // Received vector, assembled independently of the decomposition below.
    arma::cx_vec y = n;
    for (std::size_t i = 0; i < L; ++i)
        y += amp * (real.mat(center, i) * x.col(i));

    std::vector<MrcTerms> out(K);
    for (std::size_t k = 0; k < K; ++k) {
        const arma::cx_vec& gh = estimates[k];
        MrcTerms t;
        for (std::size_t i = 0; i < L; ++i) {
            const arma::cx_rowvec proj = gh.t() * real.mat(center, i); // 1 x K
            for (std::size_t j = 0; j < K; ++j) {
                const std::complex<double> term = amp * proj(j) * x(j, i);
                if (i == center && j == k)
                    t.desired = term;
                else if (i == center)
                    t.intra += term;
                else
                    t.inter += term;
            }
        }
        t.noise = arma::cdot(gh, n);
        t.total = arma::cdot(gh, y);
        out[k] = t;
    }
    return out;
}

std::vector<MonteCarloEstimate> empirical_ergodic_rate(
    const FadingSnapshot& snap, std::size_t N, const PowerAllocation& alloc,
    std::size_t trials, std::uint64_t seed, std::size_t center) {
    if (trials < 100)
        throw std::invalid_argument("need at least 100 trials");
    if (!(alloc.p_p > 0.0)) throw InvalidPilot("pilot power must be positive");
    if (alloc.tau < snap.K)
        throw std::invalid_argument("tau must be >= K for orthogonal pilots");

    const std::size_t L = snap.L, K = snap.K;
    const double tau_pp = static_cast<double>(alloc.tau) * alloc.p_p;
    const double noise_amp = 1.0 / std::sqrt(tau_pp);
    const double p_u = alloc.p_u;

    std::vector<double> gain(K), sum(K, 0.0), sumsq(K, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        gain[k] = mmse_gain(snap, center, k, tau_pp);

    // Only channels toward the center BS enter its SINR, so each trial draws
    // just that row of the tensor: G is N x (L*K), column i*K+j holding
    // g_{center,i,j}. Trial t uses the derived substream {t}, making the
    // estimate independent of any batching or worker layout.
    arma::cx_mat G(N, L * K);
    arma::cx_mat ghat(N, K);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, {t}));
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t j = 0; j < K; ++j) {
                const double a = std::sqrt(snap.at(center, i, j));
                auto col = G.colptr(i * K + j);
                for (std::size_t m = 0; m < N; ++m) col[m] = a * rng.cnormal();
            }
        for (std::size_t k = 0; k < K; ++k) {
            auto col = ghat.colptr(k);
            for (std::size_t m = 0; m < N; ++m) col[m] = noise_amp * rng.cnormal();
            for (std::size_t i = 0; i < L; ++i)
                ghat.col(k) += G.col(i * K + k);
            ghat.col(k) *= gain[k];
        }

        const arma::cx_mat ip = ghat.t() * G; // K x (L*K)
        for (std::size_t k = 0; k < K; ++k) {
            const double nrm2 =
                std::real(arma::cdot(ghat.col(k), ghat.col(k)));
            double interference = 0.0;
            for (std::size_t i = 0; i < L; ++i)
                for (std::size_t j = 0; j < K; ++j) {
                    if (i == center && j == k) continue;
                    interference += std::norm(ip(k, i * K + j));
                }
            const double est_err = std::norm(ip(k, center * K + k) - nrm2);
            const double sinr = p_u * nrm2 * nrm2 /
                                (p_u * (est_err + interference) + nrm2);
            const double rate = std::log2(1.0 + sinr);
            sum[k] += rate;
            sumsq[k] += rate * rate;
        }
    }

    std::vector<MonteCarloEstimate> out(K);
    const double n = static_cast<double>(trials);
    for (std::size_t k = 0; k < K; ++k) {
        const double mean = sum[k] / n;
        const double var = (sumsq[k] - n * mean * mean) / (n - 1.0);
        out[k] = {mean, std::sqrt(std::max(var, 0.0) / n), trials};
    }
    return out;
}

} // namespace mimo
