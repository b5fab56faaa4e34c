#pragma once

#include <cstdint>

namespace ktoep {

/// Counter-based generator: every draw is a pure function of
/// (seed, trial, index), so trials are reproducible independent of evaluation
/// order and safe to parallelize.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (trial * 0x9E3779B97F4A7C15ull));
    h = splitmix64(h ^ (index * 0xD1B54A32D192ED03ull));
    return h;
}

/// Uniform in [0, 1) with 53-bit resolution.
inline double uniform01(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) {
    return static_cast<double>(derive(seed, trial, index) >> 11) * 0x1.0p-53;
}

/// Uniform in (-amplitude, amplitude).
inline double uniform_sym(std::uint64_t seed, std::uint64_t trial, std::uint64_t index,
                          double amplitude) {
    return amplitude * (2.0 * uniform01(seed, trial, index) - 1.0);
}

}  // namespace rng
}  // namespace ktoep
