#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rbmve {

/// Deterministic random source shared by every sampling operation.
///
/// The raw stream is std::mt19937_64, whose output sequence is fixed by the
/// standard, and the mappings below are pinned here so that a seed produces
/// identical values on every platform:
///   uniform()  = (next_u64 >> 11) * 2^-53, one draw per call, in [0, 1)
///   gaussian() = Box-Muller on exactly two uniform draws
/// Callers document their own consumption order on top of this.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal deviate; consumes two uniform draws.
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

private:
    static constexpr double pi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

}  // namespace rbmve
