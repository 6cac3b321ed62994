#pragma once

#include <cstddef>
#include <cstdint>

#include "nrlab/matrix.hpp"

namespace nrlab {

/// Recipe for a reproducible search over the complex unit sphere: `samples`
/// Gaussian directions drawn from the counter stream keyed by `seed`, then
/// `descent_steps` rounds of compass search from the best sample.
struct SphereSampler {
    std::uint64_t seed = 0;
    std::size_t samples = 5000;
    std::size_t descent_steps = 50;

    /// Same stream, `factor` times as many samples.
    SphereSampler scaled(std::size_t factor) const {
        return {seed, samples * factor, descent_steps};
    }

    friend bool operator==(const SphereSampler&, const SphereSampler&) = default;
};

/// Result of a sampled sphere search. `value` is attained at `witness`, so a
/// supremum search yields a lower bound and an infimum search an upper bound.
struct SphereEstimate {
    double value = 0.0;
    CVector witness;
    std::size_t samples = 0;
    double sampled_value = 0.0;  ///< best value before descent
};

}  // namespace nrlab
