#pragma once

// Portable seeded generator for random trials. The state is a single 64-bit
// word advanced by the MMIX linear congruential step
//
//     state <- 6364136223846793005 * state + 1442695040888963407  (mod 2^64)
//
// and a uniform double in [0, 1) is (state >> 11) * 2^-53 after stepping.
// Any language with wrapping 64-bit multiplication reproduces the stream.

#include <cstdint>

#include "tauzak/harmonic.hpp"

namespace tauzak {

class PortableRng {
public:
    static constexpr std::uint64_t multiplier = 6364136223846793005ULL;
    static constexpr std::uint64_t increment = 1442695040888963407ULL;

    explicit PortableRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ = multiplier * state_ + increment;
        return state_;
    }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    /// Uniform in [-1, 1).
    double symmetric() { return 2.0 * uniform() - 1.0; }
    /// Real and imaginary parts independently uniform in [-1, 1).
    Complex complex() {
        const double re = symmetric();
        return {re, symmetric()};
    }
    /// Uniform in [0, n) by multiply-shift on the top 32 bits; n < 2^32.
    std::uint64_t below(std::uint64_t n) { return ((next_u64() >> 32) * n) >> 32; }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

inline Signal random_signal(const FiniteAbelianGroup &K, PortableRng &rng) {
    std::vector<Complex> v(K.order());
    for (auto &x : v) x = rng.complex();
    return Signal(K, std::move(v));
}

} // namespace tauzak
