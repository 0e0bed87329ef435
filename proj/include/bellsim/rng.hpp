// rng.hpp
// Seedable, portable PRNG used for every sampled run.
//
// The generator is PCG32 (XSH-RR 64/32): a 64-bit LCG advanced as
//     state <- state * 6364136223846793005 + increment
// whose 32-bit output is derived from the *pre-advance* state by
//     xorshifted = ((state >> 18) ^ state) >> 27
//     rot        = state >> 59
//     output     = (xorshifted >> rot) | (xorshifted << ((-rot) & 31))
// Seeding follows the reference scheme: state = 0, advance once, add the
// seed, advance again.  The increment is (stream << 1) | 1, so distinct
// stream ids give independent sub-streams (workers use stream = worker id;
// the default single-worker path is stream 0).
//
// Uniform doubles take the top 53 bits of two concatenated 32-bit outputs
// (high word first): u = ((hi << 32 | lo) >> 11) * 2^-53, in [0, 1).
// All of this is fixed arithmetic on unsigned integers, so identical seeds
// give bit-identical runs on any conforming platform.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "bellsim/matrix.hpp"

namespace bellsim {

class Pcg32 {
public:
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(0), inc_((stream << 1u) | 1u) {
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return (hi << 32u) | lo;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53;
    }

    // Standard normal via the trigonometric Box-Muller transform.
    // Consumes exactly two uniforms per call.
    double next_gaussian() {
        const double u1 = 1.0 - next_double();  // in (0, 1], keeps log finite
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Identity string recorded in run reports.
    static constexpr const char* id = "pcg32";

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

// Uniformly distributed point on the unit sphere (normalized Gaussian triple).
inline Vec3 random_unit_vector(Pcg32& rng) {
    for (;;) {
        const Vec3 v(rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian());
        const double n = v.norm();
        if (n > 1e-6) return v / n;
    }
}

} // namespace bellsim
