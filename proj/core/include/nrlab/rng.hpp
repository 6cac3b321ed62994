#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "nrlab/matrix.hpp"

namespace nrlab {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based stream keyed by (seed, index, tag). Two streams with the same
/// key produce the same numbers no matter what else has been drawn before.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t tag = 0) noexcept
        : key_(mix64(mix64(mix64(seed) ^ index) ^ (tag * 0xd1b54a32d192ed03ULL))) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

    /// Uniform on [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (both halves used).
    double gaussian() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Standard complex Gaussian: E|z|^2 = 1.
    Complex complex_gaussian() noexcept {
        const double re = gaussian();
        const double im = gaussian();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    std::size_t below(std::size_t bound) noexcept {
        return static_cast<std::size_t>(uniform() * static_cast<double>(bound));
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace nrlab
