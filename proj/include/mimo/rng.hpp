// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace mimo {

// Seedable, splittable randomness.
//
// Reproducibility contract: mt19937_64 output is mandated by the standard,
// and all distributions below are hand-rolled (std::normal_distribution and
// friends are implementation-defined and differ across standard libraries).
// Identical seeds therefore give bit-identical streams on every platform.

namespace detail {
// splitmix64 finalizer; good avalanche, used only for seed derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
} // namespace detail

// Derives an independent substream seed from a master seed and a path of
// indices (e.g. {snapshot, component}). Order-sensitive and prefix-separating:
// {1,2}, {2,1}, {1} and {1,0} all land on different streams. The combining
// step folds the running state into the XOR argument (hash_combine style);
// a plain s ^ mix64(v) would cancel to an absorbing state whenever a path
// element hashes to the current state, e.g. derive_seed(1, {1}).
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = detail::mix64(master);
    for (std::uint64_t v : path)
        s = detail::mix64(s ^ (detail::mix64(v) + 0x9e3779b97f4a7c15ull +
                               (s << 6) + (s >> 2)));
    return s;
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second deviate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // 1 - u in (0, 1] keeps the log argument away from zero.
        const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    // Circularly-symmetric complex normal, E|z|^2 = 1 (variance 1/2 per part).
    std::complex<double> cnormal() {
        constexpr double half = 0x1.6a09e667f3bcdp-1; // 1/sqrt(2)
        return {normal() * half, normal() * half};
    }

    std::uint64_t bits() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace mimo
