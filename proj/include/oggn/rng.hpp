#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace oggn {

/// Deterministic uniform generator. All randomness in the library flows
/// through this wrapper, so any run is reproducible bit-for-bit from its
/// seed on a given platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a role tag, so a
/// single user-facing seed can drive several generators without overlap.
std::uint64_t derive_seed(std::uint64_t base, std::string_view role);

} // namespace oggn
