#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nrlab/ensembles.hpp"
#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"
#include "nrlab/numrad.hpp"
#include "nrlab/rng.hpp"

using namespace nrlab;

namespace {

double form_modulus(const ComplexMatrix& a, std::span<const Complex> x) { return std::abs(quadratic_form(a, x)); }

}  // namespace

TEST(NumericalRadius, JordanBlock) {
    const RadiusResult r = numerical_radius({{1, 1}, {0, 1}});
    EXPECT_NEAR(r.value, 1.5, 1e-9);
}

TEST(NumericalRadius, HermitianIsSpectralRadius) {
    EXPECT_NEAR(numerical_radius(ComplexMatrix::diagonal({1.0, -3.0})).value, 3.0, 1e-9);
}

TEST(NumericalRadius, NilpotentIsHalfTheNorm) {
    EXPECT_NEAR(numerical_radius({{0, 1}, {0, 0}}).value, 0.5, 1e-9);
    EXPECT_NEAR(numerical_radius({{0, 4}, {0, 0}}).value, 2.0, 1e-9);
}

TEST(NumericalRadius, NormalIsSpectralRadius) {
    CounterRng rng(1, 2);
    const ComplexMatrix u = random_unitary(4, rng);
    ComplexMatrix d(4);
    d(0, 0) = Complex{0, 2};
    d(1, 1) = Complex{-1, 1};
    d(2, 2) = 0.5;
    d(3, 3) = Complex{1.2, -1.2};
    const ComplexMatrix a = u * d * adjoint(u);
    EXPECT_NEAR(numerical_radius(a).value, 2.0, 1e-9);
}

TEST(NumericalRadius, WitnessAttainsValue) {
    for (std::uint64_t t = 0; t < 20; ++t) {
        CounterRng rng(33, t);
        const ComplexMatrix a = random_gaussian(2 + t % 5, rng);
        const RadiusResult r = numerical_radius(a);
        EXPECT_NEAR(norm(r.witness), 1.0, 1e-12);
        EXPECT_GE(form_modulus(a, r.witness), r.value - 1e-8);
        EXPECT_LE(form_modulus(a, r.witness), r.value + 1e-9);
        EXPECT_GE(r.theta_star, 0.0);
        EXPECT_LT(r.theta_star, 2.0 * std::numbers::pi);
        const double nrm = operator_norm(a);
        EXPECT_LE(r.value, nrm + 1e-9);
        EXPECT_GE(r.value, 0.5 * nrm - 1e-9);
    }
}

TEST(NumericalRadius, BadArgumentsThrow) {
    const ComplexMatrix a = ComplexMatrix::identity(2);
    EXPECT_THROW(numerical_radius(a, 15), Error);
    EXPECT_THROW(numerical_radius(a, 720, 0.0), Error);
    EXPECT_NO_THROW(numerical_radius(a, 16));
}

TEST(SphereSearch, SupNeverExceedsRadius) {
    for (std::uint64_t t = 0; t < 20; ++t) {
        CounterRng rng(44, t);
        const std::size_t n = 2 + t % 3;
        const ComplexMatrix a = random_gaussian(n, rng);
        const double w = numerical_radius(a).value;
        const SphereEstimate est =
            sphere_sup([&](std::span<const Complex> x) { return form_modulus(a, x); }, n, {t, 2000, 50});
        EXPECT_LE(est.value, w + 1e-9);
        EXPECT_GE(est.value, est.sampled_value);
        EXPECT_NEAR(form_modulus(a, est.witness), est.value, 1e-12);
        EXPECT_EQ(est.samples, 2000u);
    }
}

TEST(SphereSearch, InfIsMirrorOfSup) {
    const ComplexMatrix h = ComplexMatrix::diagonal({0.5, 2.0, 3.0});
    const auto fn = [&](std::span<const Complex> x) { return hermitian_form(h, x); };
    const SphereEstimate lo = sphere_inf(fn, 3, {5, 1000, 50});
    const SphereEstimate hi = sphere_sup(fn, 3, {5, 1000, 50});
    EXPECT_GE(lo.value, 0.5 - 1e-12);
    EXPECT_NEAR(lo.value, 0.5, 1e-6);
    EXPECT_NEAR(hi.value, 3.0, 1e-6);
}

TEST(SphereSearch, Deterministic) {
    CounterRng rng(2, 2);
    const ComplexMatrix a = random_gaussian(3, rng);
    const auto fn = [&](std::span<const Complex> x) { return form_modulus(a, x); };
    const SphereEstimate e1 = sphere_sup(fn, 3, {99, 300, 10});
    const SphereEstimate e2 = sphere_sup(fn, 3, {99, 300, 10});
    EXPECT_EQ(e1.value, e2.value);
    EXPECT_EQ(e1.witness, e2.witness);
}

TEST(EuclideanRadius, ReducesToNumericalRadius) {
    CounterRng rng(6, 0);
    const ComplexMatrix a = random_gaussian(3, rng);
    const double w = numerical_radius(a).value;
    const double we = euclidean_radius(a, ComplexMatrix(3), {});
    EXPECT_NEAR(we, w, 1e-6);
}

TEST(EuclideanRadius, HermitianPairBounds) {
    CounterRng rng(6, 1);
    const ComplexMatrix a = random_hermitian(3, rng);
    const ComplexMatrix b = random_hermitian(3, rng);
    const double we = euclidean_radius(a, b, {});
    const double wa = numerical_radius(a).value;
    const double wb = numerical_radius(b).value;
    EXPECT_GE(we, std::max(wa, wb) - 1e-6);
    EXPECT_LE(we, std::sqrt(wa * wa + wb * wb) + 1e-9);
}
