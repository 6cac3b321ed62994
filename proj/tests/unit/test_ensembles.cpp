#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "nrlab/catalog.hpp"
#include "nrlab/ensembles.hpp"
#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"

using namespace nrlab;

TEST(Ensembles, KindNamesRoundTrip) {
    for (const char* name : {"generic", "normal", "square-zero", "positive", "positive-invertible",
                             "ordered-pair", "sandwich-triple"}) {
        EXPECT_NO_THROW(parse_kind(name)) << name;
    }
    const EnsembleKind k = parse_kind("positive-invertible:0.25:4");
    const auto& pi = std::get<PositiveInvertible>(k);
    EXPECT_DOUBLE_EQ(pi.lo, 0.25);
    EXPECT_DOUBLE_EQ(pi.hi, 4.0);
    EXPECT_EQ(kind_name(parse_kind(kind_name(k))), kind_name(k));
    EXPECT_THROW(parse_kind("unitary"), Error);
}

TEST(Ensembles, ValidateRejectsBadSpecs) {
    EXPECT_THROW((EnsembleSpec{0, GenericComplex{}, 1.0, 0}.validate()), Error);
    EXPECT_THROW((EnsembleSpec{2, GenericComplex{}, -1.0, 0}.validate()), Error);
    EXPECT_THROW((EnsembleSpec{2, PositiveInvertible{2.0, 1.0}, 1.0, 0}.validate()), Error);
}

TEST(Ensembles, DrawsArePureFunctionsOfSeedAndIndex) {
    const EnsembleSpec spec{3, GenericComplex{}, 1.0, 42};
    const EnsembleSample s1 = sample(spec, 7);
    sample(spec, 8);
    const EnsembleSample s2 = sample(spec, 7);
    EXPECT_EQ(s1.a, s2.a);
    EXPECT_EQ(s1.b, s2.b);
    EXPECT_EQ(s1.x, s2.x);
    EXPECT_NE(sample(spec, 8).a, s1.a);
    EXPECT_NE(sample({3, GenericComplex{}, 1.0, 43}, 7).a, s1.a);
}

TEST(Ensembles, SquareZero) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const EnsembleSample s = sample({4, SquareZero{}, 1.0, 5}, i);
        EXPECT_LT(max_abs_entry(s.a * s.a), 1e-12 * (1.0 + frobenius_norm(s.a) * frobenius_norm(s.a)));
        EXPECT_GT(frobenius_norm(s.a), 0.0);
    }
}

TEST(Ensembles, NormalCommutesWithAdjoint) {
    const EnsembleSample s = sample({4, Normal{}, 1.0, 6}, 0);
    EXPECT_LT(test::max_abs_diff(gram(s.a), cogram(s.a)), 1e-12);
}

TEST(Ensembles, PositiveKinds) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const EnsembleSample p = sample({3, Positive{}, 1.0, 7}, i);
        EXPECT_TRUE(is_hermitian(p.a));
        EXPECT_GE(lambda_min(p.a), -1e-12);
        const EnsembleSample q = sample({3, PositiveInvertible{0.5, 2.0}, 1.0, 7}, i);
        EXPECT_GE(lambda_min(q.a), 0.5 - 1e-12);
        EXPECT_LE(lambda_max(q.a), 2.0 + 1e-12);
    }
}

TEST(Ensembles, OrderedPair) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const EnsembleSample s = sample({3, OrderedPair{0.5}, 1.0, 8}, i);
        EXPECT_TRUE(loewner_leq(s.a, s.b));
    }
}

TEST(Ensembles, UnitaryAndUnitVector) {
    CounterRng rng(9, 0);
    const ComplexMatrix u = random_unitary(5, rng);
    EXPECT_LT(test::max_abs_diff(gram(u), ComplexMatrix::identity(5)), 1e-12);
    const CVector x = sample_unit_vector(6, 1, 2);
    EXPECT_NEAR(norm(x), 1.0, 1e-14);
    EXPECT_EQ(x, sample_unit_vector(6, 1, 2));
}

TEST(Ensembles, SandwichSatisfiesConditionedHypotheses) {
    const EnsembleSpec spec{3, SandwichTriple{0.5}, 1.0, 10};
    for (std::uint64_t i = 0; i < 20; ++i) {
        const EnsembleSample s = sample(spec, i);
        EXPECT_LT(s.m, s.M);
        CheckInstance inst;
        inst.a = s.a;
        inst.b = s.b;
        inst.x = s.x;
        inst.f = ScalarFunction::power(1.0);
        inst.pair = SchwarzPair::powers(0.5);
        const HypothesisReport h = verify_hypotheses(InequalityId::ConditionedProduct, inst);
        EXPECT_TRUE(h.satisfied()) << h.failure();
    }
}

TEST(Ensembles, SandwichWithOtherPairs) {
    const EnsembleSpec spec{2, SandwichTriple{0.5}, 2.0, 11};
    for (double a : {0.1, 0.25, 0.75}) {
        const EnsembleSample s = sample_sandwich(spec, 3, SchwarzPair::powers(a), 0.5);
        EXPECT_GT(s.M, s.m);
        EXPECT_GT(s.m, 0.0);
    }
}
