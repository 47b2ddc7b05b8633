// SPDX-License-Identifier: Apache-2.0
#include "mimo/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {

RateCoefficients rate_coefficients(const FadingSnapshot& snap, std::size_t N,
                                   std::size_t center) {
    if (N < 2)
        throw InvalidAntennaCount("rate coefficients need N >= 2, got " +
                                  std::to_string(N));
    const std::size_t L = snap.L, K = snap.K;
    const std::size_t l = center;
    const double Nm1 = static_cast<double>(N - 1);

    double cross = 0.0; // sum_{ij} beta_lij
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < K; ++j) cross += snap.at(l, i, j);

    RateCoefficients out;
    out.a.resize(K);
    out.b.resize(K);
    out.c.assign(K, cross);
    out.d.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        double sum_k = 0.0, sum_sq = 0.0, sum_sq_other = 0.0;
        for (std::size_t i = 0; i < L; ++i) {
            const double b_lik = snap.at(l, i, k);
            sum_k += b_lik;
            sum_sq += b_lik * b_lik;
            if (i != l) sum_sq_other += b_lik * b_lik;
        }
        const double own = snap.at(l, l, k);
        out.a[k] = own * own * Nm1;
        out.b[k] = Nm1 * sum_sq_other - sum_sq + cross * sum_k;
        out.d[k] = sum_k;
    }
    return out;
}

double achievable_rate(const CoefficientRow& ck, const PowerAllocation& alloc) {
    const double tp = static_cast<double>(alloc.tau) * alloc.p_p;
    const double num = ck.a * tp * alloc.p_u;
    const double den = ck.b * tp * alloc.p_u + ck.c * alloc.p_u + ck.d * tp + 1.0;
    return std::log2(1.0 + num / den);
}

double sum_spectral_efficiency(const RateCoefficients& coeffs,
                               const PowerAllocation& alloc, std::size_t T) {
    const double prelog =
        1.0 - static_cast<double>(alloc.tau) / static_cast<double>(T);
    if (prelog <= 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < coeffs.K(); ++k)
        sum += achievable_rate(coeffs.row(k), alloc);
    return prelog * sum;
}

double low_snr_fixed_pilot_slope(const RateCoefficients& coeffs, std::size_t tau,
                                 double p_p, std::size_t T) {
    const double prelog = 1.0 - static_cast<double>(tau) / static_cast<double>(T);
    const double tp = static_cast<double>(tau) * p_p;
    double sum = 0.0;
    for (std::size_t k = 0; k < coeffs.K(); ++k)
        sum += coeffs.a[k] * tp / (coeffs.d[k] * tp + 1.0);
    return std::numbers::log2e * prelog * sum;
}

double low_snr_equal_power_curvature(const RateCoefficients& coeffs,
                                     std::size_t tau, std::size_t T) {
    const double prelog = 1.0 - static_cast<double>(tau) / static_cast<double>(T);
    double sum = 0.0;
    for (std::size_t k = 0; k < coeffs.K(); ++k)
        sum += coeffs.a[k] * static_cast<double>(tau);
    return std::numbers::log2e * prelog * sum;
}

double bit_energy(const PowerAllocation& alloc, std::size_t T, double S) {
    if (!(S > 0.0))
        throw ZeroSpectralEfficiency("bit energy undefined at S = 0");
    const double frac = static_cast<double>(alloc.tau) / static_cast<double>(T);
    return (frac * alloc.p_p + (1.0 - frac) * alloc.p_u) / S;
}

} // namespace mimo
