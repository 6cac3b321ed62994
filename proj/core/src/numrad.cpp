#include "nrlab/numrad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"
#include "nrlab/rng.hpp"

namespace nrlab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr std::uint64_t sphere_tag = 0x5348455245ULL;

// cos(t) Re(A) - sin(t) Im(A), which is Hermitian by construction.
class RotatedRealPart {
public:
    explicit RotatedRealPart(const ComplexMatrix& a) : re_(a.dim()), im_(a.dim()), h_(a.dim()) {
        const std::size_t n = a.dim();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const Complex aij = a(i, j);
                const Complex aji = std::conj(a(j, i));
                re_(i, j) = 0.5 * (aij + aji);
                im_(i, j) = Complex{0.0, -0.5} * (aij - aji);
            }
            re_(i, i) = re_(i, i).real();
            im_(i, i) = im_(i, i).real();
        }
    }

    const ComplexMatrix& at(double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        auto out = h_.entries();
        auto r = re_.entries();
        auto m = im_.entries();
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * r[k] - s * m[k];
        return h_;
    }

    std::pair<double, double> extremes(double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const std::size_t n = re_.dim();
        auto out = h_.entries();
        auto r = re_.entries();
        auto m = im_.entries();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) out[i * n + j] = c * r[i * n + j] - s * m[i * n + j];
        return detail::extreme_eigenvalues(out, n, ws_);
    }

    double top(double theta) { return extremes(theta).second; }

private:
    ComplexMatrix re_;
    ComplexMatrix im_;
    ComplexMatrix h_;
    detail::EigenWorkspace ws_;
};

// Normalized sample directions depend only on (seed, n, count), so the most
// recent sets are kept per thread and shared by every objective.
struct SampleSet {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t count = 0;
    std::vector<Complex> points;  // count rows of n entries; empty rows are skipped
    std::vector<bool> valid;
};

const SampleSet& sample_set(std::uint64_t seed, std::size_t n, std::size_t count) {
    thread_local std::array<SampleSet, 4> cache;
    thread_local std::size_t next = 0;
    for (const auto& c : cache)
        if (c.n == n && c.seed == seed && c.count == count) return c;
    SampleSet& slot = cache[next];
    next = (next + 1) % cache.size();
    slot.seed = seed;
    slot.n = n;
    slot.count = count;
    slot.points.resize(n * count);
    slot.valid.assign(count, true);
    CounterRng rng(seed, 0, sphere_tag);
    for (std::size_t s = 0; s < count; ++s) {
        std::span<Complex> x(slot.points.data() + s * n, n);
        for (auto& c : x) c = rng.complex_gaussian();
        const double len = norm(x);
        if (len == 0.0) {
            slot.valid[s] = false;
            continue;
        }
        for (auto& c : x) c /= len;
    }
    return slot;
}

double wrap_angle(double t) {
    t = std::fmod(t, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return t;
}

}  // namespace

RadiusResult numerical_radius(const ComplexMatrix& a, std::size_t grid, double tol) {
    if (a.empty()) throw Error(ErrorKind::InvalidMatrix, "empty matrix");
    if (grid < 16) throw Error(ErrorKind::UnsupportedParameter, "radius grid must have at least 16 points");
    if (!(tol > 0.0)) throw Error(ErrorKind::UnsupportedParameter, "radius tolerance must be positive");

    RotatedRealPart rot(a);
    const double h = two_pi / static_cast<double>(grid);
    std::vector<double> values(grid);
    if (grid % 2 == 0) {
        // lambda_max at theta + pi is -lambda_min at theta.
        const std::size_t half = grid / 2;
        for (std::size_t k = 0; k < half; ++k) {
            const auto [lo, hi] = rot.extremes(h * static_cast<double>(k));
            values[k] = hi;
            values[k + half] = -lo;
        }
    } else {
        for (std::size_t k = 0; k < grid; ++k) values[k] = rot.top(h * static_cast<double>(k));
    }

    std::size_t best_k = 0;
    for (std::size_t k = 1; k < grid; ++k)
        if (values[k] > values[best_k]) best_k = k;

    std::vector<std::size_t> candidates{best_k};
    for (std::size_t k = 0; k < grid; ++k) {
        if (k == best_k) continue;
        const double prev = values[(k + grid - 1) % grid];
        const double next = values[(k + 1) % grid];
        if (values[k] > prev && values[k] >= next) candidates.push_back(k);
    }

    // The angle derivative of the rotated real part is bounded by ||A|| <= ||A||_F.
    const double lipschitz = frobenius_norm(a);
    double best_value = values[best_k];
    double best_theta = h * static_cast<double>(best_k);
    double best_width = h;

    constexpr double inv_phi = 0.6180339887498949;
    for (std::size_t k : candidates) {
        const double vk = values[k];
        if (vk + lipschitz * h < best_value) continue;
        double lo = h * static_cast<double>(k) - h;
        double hi = h * static_cast<double>(k) + h;
        double x1 = hi - inv_phi * (hi - lo);
        double x2 = lo + inv_phi * (hi - lo);
        double f1 = rot.top(x1);
        double f2 = rot.top(x2);
        double local_best = vk;
        double local_theta = h * static_cast<double>(k);
        auto consider = [&](double x, double fx) {
            if (fx > local_best) {
                local_best = fx;
                local_theta = x;
            }
        };
        consider(x1, f1);
        consider(x2, f2);
        while (hi - lo > tol) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = rot.top(x2);
                consider(x2, f2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = rot.top(x1);
                consider(x1, f1);
            }
        }
        if (local_best > best_value || (k == best_k && local_best >= best_value)) {
            best_value = local_best;
            best_theta = local_theta;
            best_width = hi - lo;
        }
    }

    RadiusResult result;
    result.theta_star = wrap_angle(best_theta);
    const HermitianEigen eig = hermitian_eigen(rot.at(result.theta_star));
    result.witness = eig.vector(a.dim() - 1);
    result.value = std::max(eig.max(), 0.0);
    const double eig_slack = tolerance::res_per_dim * static_cast<double>(a.dim()) * (1.0 + lipschitz);
    result.refinement_width = lipschitz * best_width + eig_slack;
    return result;
}

SphereEstimate sphere_sup(const SphereObjective& objective, std::size_t n, const SphereSampler& sampler) {
    if (n == 0) throw Error(ErrorKind::InvalidMatrix, "sphere dimension must be positive");
    SphereEstimate est;
    est.value = -std::numeric_limits<double>::infinity();
    est.samples = std::max<std::size_t>(sampler.samples, 1);
    const SampleSet& set = sample_set(sampler.seed, n, est.samples);
    std::size_t best = est.samples;
    for (std::size_t s = 0; s < est.samples; ++s) {
        if (!set.valid[s]) continue;
        const double val = objective(std::span<const Complex>(set.points.data() + s * n, n));
        if (val > est.value) {
            est.value = val;
            best = s;
        }
    }
    if (best < est.samples) est.witness.assign(set.points.begin() + best * n, set.points.begin() + (best + 1) * n);
    est.sampled_value = est.value;

    // Compass search over the real and imaginary part of each coordinate.
    double step = 0.5;
    CVector trial(n);
    CVector best_trial(n);
    const Complex dirs[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    for (std::size_t it = 0; it < sampler.descent_steps; ++it) {
        double best_val = est.value;
        bool improved = false;
        for (std::size_t j = 0; j < n; ++j) {
            for (const Complex& d : dirs) {
                trial = est.witness;
                trial[j] += step * d;
                const double len = norm(trial);
                if (len == 0.0) continue;
                for (auto& c : trial) c /= len;
                const double val = objective(trial);
                if (val > best_val) {
                    best_val = val;
                    best_trial = trial;
                    improved = true;
                }
            }
        }
        if (improved) {
            est.value = best_val;
            est.witness = best_trial;
        } else {
            step *= 0.5;
        }
    }
    return est;
}

SphereEstimate sphere_inf(const SphereObjective& objective, std::size_t n, const SphereSampler& sampler) {
    SphereEstimate est =
        sphere_sup([&](std::span<const Complex> x) { return -objective(x); }, n, sampler);
    est.value = -est.value;
    est.sampled_value = -est.sampled_value;
    return est;
}

double euclidean_radius(const ComplexMatrix& a, const ComplexMatrix& b, const SphereSampler& sampler) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "euclidean radius operands differ in dimension");
    }
    return sphere_sup(
               [&](std::span<const Complex> x) {
                   return std::hypot(std::abs(quadratic_form(a, x)), std::abs(quadratic_form(b, x)));
               },
               a.dim(), sampler)
        .value;
}

}  // namespace nrlab
