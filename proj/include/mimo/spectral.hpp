// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "mimo/geometry.hpp"

namespace mimo {

// Per-terminal coefficients of the closed-form MRC rate with MMSE-estimated
// channels. For terminal k of the center cell l:
//
//   R_k = log2(1 + a_k tau p_p p_u / (b_k tau p_p p_u + c_k p_u + d_k tau p_p + 1))
//
//   a_k = beta_llk^2 (N-1)
//   b_k = (N-1) sum_{i!=l} beta_lik^2 - sum_i beta_lik^2
//         + (sum_{ij} beta_lij)(sum_i beta_lik)
//   c_k = sum_{ij} beta_lij          (same for every k)
//   d_k = sum_i beta_lik
struct CoefficientRow {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

struct RateCoefficients {
    std::vector<double> a, b, c, d;

    std::size_t K() const { return a.size(); }
    CoefficientRow row(std::size_t k) const { return {a[k], b[k], c[k], d[k]}; }
};

struct PowerAllocation {
    std::size_t tau = 0; // pilot symbols
    double p_p = 0.0;    // pilot power per symbol (linear)
    double p_u = 0.0;    // data power per symbol (linear)
};

// Per-terminal energy budget over one coherence interval; SNR is P/T.
struct EnergyBudget {
    double P = 0.0;
    std::size_t T = 0;

    double snr() const { return P / static_cast<double>(T); }
};

// Throws InvalidAntennaCount for N < 2 (a_k needs N-1 > 0).
RateCoefficients rate_coefficients(const FadingSnapshot& snap, std::size_t N,
                                   std::size_t center = 0);

double achievable_rate(const CoefficientRow& ck, const PowerAllocation& alloc);

// S = (1 - tau/T) sum_k R_k; zero when tau = T.
double sum_spectral_efficiency(const RateCoefficients& coeffs,
                               const PowerAllocation& alloc, std::size_t T);

// Low-power slope of S in p_u at fixed pilot power:
// log2(e) (1 - tau/T) sum_k a_k tau p_p / (d_k tau p_p + 1).
double low_snr_fixed_pilot_slope(const RateCoefficients& coeffs, std::size_t tau,
                                 double p_p, std::size_t T);

// Coefficient of p_u^2 in S when p_p = p_u (the squaring effect):
// log2(e) (1 - tau/T) sum_k a_k tau.
double low_snr_equal_power_curvature(const RateCoefficients& coeffs,
                                     std::size_t tau, std::size_t T);

// eta = [(tau/T) p_p + (1 - tau/T) p_u] / S; throws ZeroSpectralEfficiency
// when S <= 0.
double bit_energy(const PowerAllocation& alloc, std::size_t T, double S);

} // namespace mimo
