// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "mimo/spectral.hpp"

namespace mimo {

// Solution of the energy-split program. The training duration always comes
// out as tau = K (shrinking tau to the minimum that keeps pilots orthogonal
// and re-spending the freed energy never hurts), so the search is the
// concave 1-D problem over p_u in [0, P/(T-K)] with p_p eliminated via the
// budget tau p_p + (T - tau) p_u = P.
struct AllocationSolution {
    std::size_t tau_star = 0;
    double p_p_star = 0.0;
    double p_u_star = 0.0;
    double s_star = 0.0;   // bits/s/Hz
    double eta_star = 0.0; // energy per bit; +inf when S = 0 (e.g. P = 0)
    int iterations = 0;    // golden-section shrink steps of the winning solve
    double bracket_width = 0.0; // final bracket size around p_u_star
};

// p_p = (P - (T - K) p_u) / K, i.e. P/K - (T/K - 1) p_u. Throws OutOfBracket
// unless 0 <= p_u <= P/(T-K) (tiny FP slack allowed); clamps the roundoff
// residue at the p_p = 0 endpoint.
double pilot_power_from_data_power(double p_u, double P, std::size_t T,
                                   std::size_t K);

// Sum spectral efficiency along the budget line at tau = K.
double objective_p2(double p_u, const RateCoefficients& coeffs, double P,
                    std::size_t T, std::size_t K);

// Second derivative of f_k(p_u) (the SINR of terminal k along the budget
// line), evaluated through the closed-form cubic; <= 0 everywhere on the
// bracket, which is what makes the 1-D program concave.
double f_k_second_derivative(double p_u, const CoefficientRow& ck, double P,
                             std::size_t T, std::size_t K);

// Golden-section search on [0, P/(T-K)] down to tol * bracket, plus one
// parabolic-fit refinement. Concavity guarantees the global optimum. Throws
// NonFiniteObjective if an evaluation is non-finite. P = 0 returns the
// all-zero allocation with S = 0.
AllocationSolution solve_p2(const RateCoefficients& coeffs, double P,
                            std::size_t T, std::size_t K, double tol = 1e-8);

// Oracle for the tau reduction: solves the inner 1-D problem for every
// integer tau in [K, T-1] and returns the best. (tau = T would leave no data
// symbols; S = 0 identically.)
AllocationSolution solve_p1_bruteforce(const RateCoefficients& coeffs, double P,
                                       std::size_t T, std::size_t K,
                                       double tol = 1e-8);

// The no-resource-allocation reference: p_p = p_u = P/T, tau = K.
AllocationSolution equal_power_baseline(const RateCoefficients& coeffs, double P,
                                        std::size_t T, std::size_t K);

} // namespace mimo
