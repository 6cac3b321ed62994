#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "nrlab/ensembles.hpp"
#include "nrlab/error.hpp"
#include "nrlab/function.hpp"
#include "nrlab/linalg.hpp"
#include "nrlab/rng.hpp"

using namespace nrlab;

namespace {

double residual(const ComplexMatrix& h, const HermitianEigen& eig) {
    const std::size_t n = h.dim();
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const CVector v = eig.vector(k);
        const CVector hv = h * v;
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(hv[i] - eig.eigenvalues[k] * v[i]));
    }
    return worst;
}

}  // namespace

TEST(Linalg, JacobiResidualAndUnitarity) {
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u}) {
        CounterRng rng(11, n);
        const ComplexMatrix h = random_hermitian(n, rng);
        const HermitianEigen eig = hermitian_eigen(h);
        EXPECT_LT(residual(h, eig), 1e-10 * (1.0 + hermitian_norm(h))) << "n=" << n;
        const ComplexMatrix vv = gram(eig.vectors);
        EXPECT_LT(test::max_abs_diff(vv, ComplexMatrix::identity(n)), 1e-10) << "n=" << n;
        EXPECT_TRUE(std::is_sorted(eig.eigenvalues.begin(), eig.eigenvalues.end()));
    }
}

TEST(Linalg, TridiagonalPathMatchesJacobi) {
    for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 12u, 24u}) {
        CounterRng rng(3, n);
        const ComplexMatrix h = random_hermitian(n, rng, 2.0);
        const auto fast = hermitian_eigenvalues(h);
        const auto ref = hermitian_eigen(h).eigenvalues;
        ASSERT_EQ(fast.size(), n);
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(fast[k], ref[k], 1e-10) << "n=" << n << " k=" << k;

        detail::EigenWorkspace ws;
        const auto [lo, hi] = detail::extreme_eigenvalues(h.entries(), n, ws);
        EXPECT_NEAR(lo, ref.front(), 1e-10);
        EXPECT_NEAR(hi, ref.back(), 1e-10);
    }
}

TEST(Linalg, KnownSpectrum) {
    const ComplexMatrix h{{2, Complex{0, 1}}, {Complex{0, -1}, 2}};
    const auto ev = hermitian_eigenvalues(h);
    EXPECT_NEAR(ev[0], 1.0, 1e-14);
    EXPECT_NEAR(ev[1], 3.0, 1e-14);
    EXPECT_NEAR(lambda_min(h), 1.0, 1e-14);
    EXPECT_NEAR(lambda_max(h), 3.0, 1e-14);
}

TEST(Linalg, DegenerateSpectrum) {
    const auto ev = hermitian_eigenvalues(ComplexMatrix::identity(6));
    for (double e : ev) EXPECT_NEAR(e, 1.0, 1e-15);
    const HermitianEigen eig = hermitian_eigen(ComplexMatrix(4));
    for (double e : eig.eigenvalues) EXPECT_EQ(e, 0.0);
}

TEST(Linalg, NotHermitianRejected) {
    const ComplexMatrix a{{1, 1}, {0, 1}};
    EXPECT_FALSE(is_hermitian(a));
    try {
        hermitian_eigen(a);
        FAIL() << "expected NotHermitian";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
    }
    EXPECT_THROW(hermitian_eigenvalues(a), Error);
}

TEST(Linalg, TinyAsymmetryIsAbsorbed) {
    ComplexMatrix h{{1, 2}, {2, 5}};
    h(0, 1) += 1e-13;
    EXPECT_TRUE(is_hermitian(h));
    const ComplexMatrix s = checked_hermitian(h);
    EXPECT_EQ(s(0, 1), s(1, 0));
}

TEST(Linalg, OperatorNormAndAbs) {
    const ComplexMatrix a{{0, 1}, {0, 0}};
    EXPECT_NEAR(operator_norm(a), 1.0, 1e-14);
    EXPECT_LT(test::max_abs_diff(abs_operator(a), ComplexMatrix::diagonal({0.0, 1.0})), 1e-14);

    CounterRng rng(5, 0);
    const ComplexMatrix g = random_gaussian(4, rng);
    const ComplexMatrix m = abs_operator(g);
    EXPECT_LT(test::max_abs_diff(m * m, gram(g)), 1e-12);
    EXPECT_NEAR(operator_norm(g), lambda_max(m), 1e-12);
}

TEST(Linalg, PsdPowerAndClamp) {
    CounterRng rng(9, 1);
    const ComplexMatrix p = random_positive_spectrum(4, rng, 0.5, 3.0);
    const ComplexMatrix root = psd_power(p, 0.5);
    EXPECT_LT(test::max_abs_diff(root * root, p), 1e-12);
    const ComplexMatrix inv = psd_power(p, -1.0);
    EXPECT_LT(test::max_abs_diff(inv * p, ComplexMatrix::identity(4)), 1e-12);

    // Rank-one projector with roundoff-level negative eigenvalues.
    const CVector u = normalized(CVector{1, Complex{1, 1}, 2});
    ComplexMatrix proj(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) proj(i, j) = u[i] * std::conj(u[j]);
    EXPECT_NO_THROW(apply_scalar_function(ScalarFunction::power(0.5), proj));
    EXPECT_LT(test::max_abs_diff(psd_power(proj, 0.5), proj), 1e-7);

    const ComplexMatrix neg = ComplexMatrix::diagonal({-0.1, 1.0});
    try {
        apply_scalar_function(ScalarFunction::power(0.5), neg);
        FAIL() << "expected DomainViolation";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DomainViolation);
    }
}

TEST(Linalg, LoewnerOrder) {
    const ComplexMatrix a = ComplexMatrix::diagonal({1.0, 2.0});
    const ComplexMatrix b = ComplexMatrix::diagonal({1.0, 3.0});
    EXPECT_TRUE(loewner_leq(a, b));
    EXPECT_FALSE(loewner_leq(b, a));
    EXPECT_TRUE(loewner_leq(a, a));
    const ComplexMatrix c{{2, 1}, {1, 2}};
    EXPECT_FALSE(loewner_leq(a, c));  // c - a = [[1, 1], [1, 0]] is indefinite
}
