// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nudf/types.hpp"

#include <cmath>
#include <cstdint>

namespace nudf {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Keyed substream seed, the project-wide convention for handing a derived
// seed across an API boundary (matches the Rng(seed, stream) constructor).
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

// xoshiro256** seeded via splitmix64. Small state, cheap to construct, so every
// sample/candidate/point can own an independent substream keyed by (seed, index).
// Distributions are implemented explicitly so streams are reproducible across
// standard libraries, not just across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : s_) word = x = splitmix64(x);
    }

    // Substream derivation: mixes the parent seed with one or two stream keys.
    Rng(std::uint64_t seed, std::uint64_t stream) : Rng(splitmix64(seed ^ splitmix64(stream))) {}
    Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) : Rng(splitmix64(seed ^ splitmix64(a)) ^ splitmix64(~b)) {}

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection-free modulo bias is negligible for n << 2^64, but keep it exact.
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Box-Muller; consumes two uniforms per pair, caches the second value.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    Vec3 uniform_in_box(const Box3& box) {
        return {uniform(box.min().x(), box.max().x()), uniform(box.min().y(), box.max().y()),
                uniform(box.min().z(), box.max().z())};
    }

private:
    std::uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace nudf
