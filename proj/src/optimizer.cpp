// SPDX-License-Identifier: Apache-2.0
#include "mimo/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {

namespace {

constexpr double kInvPhi = 0.6180339887498949; // (sqrt(5) - 1) / 2

struct ScanResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    double bracket = 0.0;
};

// Golden-section maximization on [lo, hi] followed by one parabolic-fit
// refinement. On an exactly flat objective the bracket shrinks symmetrically,
// so the midpoint is returned.
template <typename F>
ScanResult golden_max(F&& g, double lo, double hi, double tol_abs) {
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    int iters = 0;
    while (hi - lo > tol_abs) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = g(x2);
        } else if (f2 < f1) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = g(x1);
        } else {
            // Tie: shrink from both ends. Drives flat stretches to their
            // midpoint instead of drifting toward one endpoint.
            lo = x1;
            hi = x2;
            x1 = hi - kInvPhi * (hi - lo);
            x2 = lo + kInvPhi * (hi - lo);
            f1 = g(x1);
            f2 = g(x2);
        }
        ++iters;
    }

    const double xm = 0.5 * (lo + hi);
    const double fm = g(xm);

    ScanResult best{xm, fm, iters, hi - lo};
    auto consider = [&](double x, double fx) {
        if (fx > best.fx) {
            best.x = x;
            best.fx = fx;
        }
    };
    consider(x1, f1);
    consider(x2, f2);

    // One quadratic fit through (x1, f1), (xm, fm), (x2, f2).
    const double d1 = (xm - x1) * (fm - f2);
    const double d2 = (xm - x2) * (fm - f1);
    const double denom = d1 - d2;
    if (denom != 0.0) {
        const double xq = xm - 0.5 * ((xm - x1) * d1 - (xm - x2) * d2) / denom;
        if (std::isfinite(xq) && xq > lo && xq < hi) consider(xq, g(xq));
    }
    return best;
}

// Inner solve at a fixed training length tau; shares the machinery between
// the tau = K path and the brute-force oracle.
ScanResult solve_fixed_tau(const RateCoefficients& coeffs, double P,
                           std::size_t T, std::size_t tau, double tol) {
    const double bracket = P / static_cast<double>(T - tau);
    const double prelog =
        1.0 - static_cast<double>(tau) / static_cast<double>(T);
    auto g = [&](double p_u) {
        const double tp = P - static_cast<double>(T - tau) * p_u; // tau * p_p
        double sum = 0.0;
        for (std::size_t k = 0; k < coeffs.K(); ++k) {
            const double num = coeffs.a[k] * tp * p_u;
            const double den =
                coeffs.b[k] * tp * p_u + coeffs.c[k] * p_u + coeffs.d[k] * tp + 1.0;
            sum += std::log2(1.0 + num / den);
        }
        const double val = prelog * sum;
        if (!std::isfinite(val))
            throw NonFiniteObjective("objective not finite at p_u = " +
                                     std::to_string(p_u));
        return val;
    };
    return golden_max(g, 0.0, bracket, tol * bracket);
}

AllocationSolution zero_solution(std::size_t K) {
    AllocationSolution sol;
    sol.tau_star = K;
    sol.eta_star = std::numeric_limits<double>::infinity();
    return sol;
}

AllocationSolution pack(const ScanResult& r, double P, std::size_t T,
                        std::size_t tau) {
    AllocationSolution sol;
    sol.tau_star = tau;
    sol.p_u_star = r.x;
    sol.p_p_star =
        (P - static_cast<double>(T - tau) * r.x) / static_cast<double>(tau);
    if (sol.p_p_star < 0.0) sol.p_p_star = 0.0; // roundoff at the endpoint
    sol.s_star = r.fx;
    sol.eta_star = r.fx > 0.0
                       ? bit_energy({tau, sol.p_p_star, sol.p_u_star}, T, r.fx)
                       : std::numeric_limits<double>::infinity();
    sol.iterations = r.iterations;
    sol.bracket_width = r.bracket;
    return sol;
}

void check_args(const RateCoefficients& coeffs, double P, std::size_t T,
                std::size_t K, double tol) {
    if (coeffs.K() == 0) throw std::invalid_argument("empty coefficient set");
    if (K >= T) throw std::invalid_argument("need K < T");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (!(P >= 0.0) || !std::isfinite(P))
        throw std::invalid_argument("budget must be finite and nonnegative");
}

} // namespace

double pilot_power_from_data_power(double p_u, double P, std::size_t T,
                                   std::size_t K) {
    if (K >= T) throw std::invalid_argument("need K < T");
    const double bracket = P / static_cast<double>(T - K);
    const double slack = 1e-12 * (bracket + 1.0);
    if (!(p_u >= -slack) || p_u > bracket + slack)
        throw OutOfBracket("p_u = " + std::to_string(p_u) +
                           " outside [0, " + std::to_string(bracket) + "]");
    double p_p =
        (P - static_cast<double>(T - K) * p_u) / static_cast<double>(K);
    if (p_p < 0.0) p_p = 0.0;
    return p_p;
}

double objective_p2(double p_u, const RateCoefficients& coeffs, double P,
                    std::size_t T, std::size_t K) {
    const double p_p = pilot_power_from_data_power(p_u, P, T, K);
    return sum_spectral_efficiency(coeffs, {K, p_p, p_u}, T);
}

double f_k_second_derivative(double p_u, const CoefficientRow& ck, double P,
                             std::size_t T, std::size_t K) {
    if (ck.a == 0.0) return 0.0; // f_k identically zero
    const double Th = static_cast<double>(T - K);
    const double p = p_u;
    const double u = P - Th * p; // tau * p_p along the budget line
    const double den = ck.b * u * p + ck.c * p + ck.d * u + 1.0;
    const double omega = den * den * den / (2.0 * ck.a);
    const double dP1 = ck.d * P + 1.0;
    const double cubic = -ck.b * Th * Th * (ck.c - ck.d * Th) * p * p * p -
                         3.0 * ck.b * Th * Th * dP1 * p * p +
                         3.0 * ck.b * Th * P * dP1 * p -
                         dP1 * (ck.b * P * P + ck.c * P + Th);
    return cubic / omega;
}

AllocationSolution solve_p2(const RateCoefficients& coeffs, double P,
                            std::size_t T, std::size_t K, double tol) {
    check_args(coeffs, P, T, K, tol);
    if (P == 0.0) return zero_solution(K);
    return pack(solve_fixed_tau(coeffs, P, T, K, tol), P, T, K);
}

AllocationSolution solve_p1_bruteforce(const RateCoefficients& coeffs, double P,
                                       std::size_t T, std::size_t K,
                                       double tol) {
    check_args(coeffs, P, T, K, tol);
    if (P == 0.0) return zero_solution(K);
    std::size_t best_tau = K;
    ScanResult best = solve_fixed_tau(coeffs, P, T, K, tol);
    for (std::size_t tau = K + 1; tau <= T - 1; ++tau) {
        const ScanResult r = solve_fixed_tau(coeffs, P, T, tau, tol);
        if (r.fx > best.fx) {
            best = r;
            best_tau = tau;
        }
    }
    return pack(best, P, T, best_tau);
}

AllocationSolution equal_power_baseline(const RateCoefficients& coeffs, double P,
                                        std::size_t T, std::size_t K) {
    check_args(coeffs, P, T, K, 1.0);
    AllocationSolution sol;
    sol.tau_star = K;
    const double p = P / static_cast<double>(T);
    sol.p_p_star = p;
    sol.p_u_star = p;
    sol.s_star = sum_spectral_efficiency(coeffs, {K, p, p}, T);
    sol.eta_star = sol.s_star > 0.0
                       ? bit_energy({K, p, p}, T, sol.s_star)
                       : std::numeric_limits<double>::infinity();
    return sol;
}

} // namespace mimo
