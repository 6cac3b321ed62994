#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "nrlab/matrix.hpp"
#include "nrlab/sampler.hpp"

namespace nrlab {

struct RadiusResult {
    double value = 0.0;
    double theta_star = 0.0;  ///< in [0, 2 pi)
    CVector witness;          ///< unit vector with |<A w, w>| >= value - refinement_width
    double refinement_width = 0.0;
};

inline constexpr std::size_t default_radius_grid = 720;
inline constexpr double default_radius_tol = 1e-10;

/// w(A) = max over theta of lambda_max(Re(e^{i theta} A)): a uniform theta grid
/// followed by golden-section refinement around each grid-local maximum that
/// could still beat the incumbent. Throws UnsupportedParameter for grid < 16 or
/// tol <= 0.
RadiusResult numerical_radius(const ComplexMatrix& a, std::size_t grid = default_radius_grid,
                              double tol = default_radius_tol);

using SphereObjective = std::function<double(std::span<const Complex>)>;

/// Best sampled value followed by compass ascent. The value is attained at the
/// returned witness, hence a lower bound of the true supremum.
SphereEstimate sphere_sup(const SphereObjective& objective, std::size_t n, const SphereSampler& sampler);

/// Mirror of sphere_sup; the value is an upper bound of the true infimum.
SphereEstimate sphere_inf(const SphereObjective& objective, std::size_t n, const SphereSampler& sampler);

/// Sampled lower bound of w_e(A, B) = sup (|<Ax,x>|^2 + |<Bx,x>|^2)^{1/2}.
double euclidean_radius(const ComplexMatrix& a, const ComplexMatrix& b, const SphereSampler& sampler);

}  // namespace nrlab
