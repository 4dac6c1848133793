#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "depcov/errors.hpp"

// Seeded randomness for the whole artifact. The engine is std::mt19937_64;
// everything layered on top (uniforms, normals, gammas, permutations) is
// spelled out here so the streams are fully determined by the seed and this
// file, not by library internals.

namespace depcov {

using Rng = std::mt19937_64;

// splitmix64 step (Steele, Lea, Flood 2014). Used only to decorrelate seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stream `index` of a master seed. Counter-based, so independent substreams
// (permutations, trials, generator instances) can be drawn in any order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0xA0761D6478BD642Full + index);
    return splitmix64(s);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform on [0, 1), 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1); safe under log().
inline double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Unbiased integer in [0, bound), bound >= 1. Rejection on the top slice.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

// One standard normal draw via Box-Muller (cos branch only).
inline double normal(Rng& rng) {
    const double u1 = uniform_open(rng);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Gamma(shape, scale) via Marsaglia-Tsang squeeze; boosts shape < 1.
inline double gamma_draw(Rng& rng, double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        fail(ErrorCode::invalid_parameter, "gamma_draw requires shape > 0 and scale > 0");
    if (shape < 1.0) {
        const double u = uniform_open(rng);
        return gamma_draw(rng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal(rng);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = uniform_open(rng);
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

inline double chi_square(Rng& rng, double dof) {
    return gamma_draw(rng, dof / 2.0, 2.0);
}

// Uniform random permutation of {0..n-1}, Fisher-Yates.
inline std::vector<std::uint32_t> random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

}  // namespace depcov
