#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "nrlab/catalog.hpp"
#include "nrlab/ensembles.hpp"
#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"

using namespace nrlab;

namespace {

// Reference values computed independently with numpy (eigvalsh and a dense
// theta sweep refined with scipy's bounded minimizer).
constexpr double ex1_lhs = 14.520797289396144;
constexpr double ex1_new = 29.58638994824112;
constexpr double ex1_kittaneh = 25.282752347316727;
constexpr double ex2_lhs = 17.944271909999152;
constexpr double ex2_new = 25.402605236540737;
constexpr double ex2_kittaneh = 29.446725000709215;

CheckInstance pair_instance(ComplexMatrix a, ComplexMatrix b) {
    CheckInstance inst;
    inst.a = std::move(a);
    inst.b = std::move(b);
    return inst;
}

CheckInstance sandwich_instance(ComplexMatrix a, ComplexMatrix b, ComplexMatrix x, double root_pair = 0.5) {
    CheckInstance inst;
    inst.a = std::move(a);
    inst.b = std::move(b);
    inst.x = std::move(x);
    inst.f = ScalarFunction::power(1.0);
    inst.pair = SchwarzPair::powers(root_pair);
    return inst;
}

}  // namespace

TEST(Catalog, NamesRoundTrip) {
    std::set<std::string> seen;
    for (InequalityId id : all_inequalities()) {
        const std::string name(to_string(id));
        EXPECT_TRUE(seen.insert(name).second) << name;
        EXPECT_EQ(parse_inequality(name), id);
        EXPECT_FALSE(formula(id).empty());
    }
    EXPECT_EQ(seen.size(), inequality_count);
    try {
        parse_inequality("no-such-member");
        FAIL() << "expected UnsupportedParameter";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedParameter);
        EXPECT_NE(std::string(e.what()).find("sum-new-bound"), std::string::npos);
    }
}

TEST(Catalog, SampledInfimumMembers) {
    std::set<InequalityId> sampled;
    for (InequalityId id : all_inequalities())
        if (uses_sampled_infimum(id)) sampled.insert(id);
    const std::set<InequalityId> expected{InequalityId::RefinedConvexity, InequalityId::ImprovedConvexProduct,
                                          InequalityId::HosseiniGeo, InequalityId::HosseiniGeoNorms};
    EXPECT_EQ(sampled, expected);
}

TEST(Catalog, FirstWorkedExample) {
    const auto inst = pair_instance({{1, 0}, {-3, 1}}, {{-1, 2}, {0, 1}});
    const CheckResult nb = evaluate(InequalityId::SumNewBound, inst);
    const CheckResult kb = evaluate(InequalityId::SumSqKittaneh, inst);
    EXPECT_NEAR(nb.lhs, ex1_lhs, 1e-10);
    EXPECT_NEAR(nb.rhs, ex1_new, 1e-9);
    EXPECT_NEAR(kb.lhs, ex1_lhs, 1e-10);
    EXPECT_NEAR(kb.rhs, ex1_kittaneh, 1e-10);
    EXPECT_EQ(nb.status, Status::Holds);
    EXPECT_EQ(kb.status, Status::Holds);
    EXPECT_LT(nb.lhs, kb.rhs);
    EXPECT_LT(kb.rhs, nb.rhs);
}

TEST(Catalog, SecondWorkedExample) {
    const auto inst = pair_instance({{2, 0}, {3, 1}}, {{0, 1}, {0, 1}});
    const CheckResult nb = evaluate(InequalityId::SumNewBound, inst);
    const CheckResult kb = evaluate(InequalityId::SumSqKittaneh, inst);
    EXPECT_NEAR(nb.lhs, ex2_lhs, 1e-10);
    EXPECT_NEAR(nb.rhs, ex2_new, 1e-9);
    EXPECT_NEAR(kb.rhs, ex2_kittaneh, 1e-10);
    EXPECT_EQ(nb.status, Status::Holds);
    EXPECT_EQ(kb.status, Status::Holds);
    EXPECT_LT(nb.lhs, nb.rhs);
    EXPECT_LT(nb.rhs, kb.rhs);
}

TEST(Catalog, GeoRadiusScalarCase) {
    CheckInstance inst;
    inst.a = ComplexMatrix::diagonal({4.0, 4.0});
    inst.b = ComplexMatrix::diagonal({9.0, 9.0});
    inst.x = ComplexMatrix::identity(2);
    const CheckResult r = evaluate(InequalityId::GeoRadius, inst);
    EXPECT_EQ(r.status, Status::Holds);
    EXPECT_NEAR(r.lhs, 6.0, 1e-9);
    EXPECT_NEAR(r.rhs, 6.5, 1e-12);
}

TEST(Catalog, NormSandwichNilpotentEquality) {
    const CheckResult r = evaluate(InequalityId::NormSandwich, pair_instance({{0, 1}, {0, 0}}, {}));
    EXPECT_EQ(r.status, Status::Holds);
    ASSERT_EQ(r.links.size(), 2u);
    EXPECT_NEAR(r.links[0].lhs, 0.5, 1e-12);
    EXPECT_NEAR(r.links[0].rhs, 0.5, 1e-9);
    EXPECT_NEAR(r.links[1].rhs, 1.0, 1e-12);
    EXPECT_NEAR(r.slack, 0.0, 1e-9);
}

TEST(Catalog, ConditionedBounds) {
    const auto inst = sandwich_instance(ComplexMatrix::diagonal({3.0, 3.0}), ComplexMatrix::identity(2),
                                        ComplexMatrix::identity(2));
    const HypothesisReport h = verify_hypotheses(InequalityId::ConditionedProduct, inst);
    EXPECT_TRUE(h.satisfied()) << h.failure();
    ASSERT_TRUE(h.m && h.M);
    EXPECT_NEAR(*h.m, 1.0, 1e-12);
    EXPECT_NEAR(*h.M, 9.0, 1e-12);
    EXPECT_EQ(evaluate(InequalityId::ConditionedProduct, inst).status, Status::Holds);
}

TEST(Catalog, ConditionedWithoutGapIsNotApplicable) {
    const auto inst = sandwich_instance(ComplexMatrix::identity(2), ComplexMatrix::identity(2),
                                        ComplexMatrix::identity(2));
    EXPECT_FALSE(verify_hypotheses(InequalityId::ConditionedProduct, inst).satisfied());
    const CheckResult r = evaluate(InequalityId::ConditionedProduct, inst);
    EXPECT_EQ(r.status, Status::NotApplicable);
    EXPECT_FALSE(r.reason.empty());
}

TEST(Catalog, GammaBoundFailsOnCommutingDiagonalInstance) {
    // S = T = diag(1, 4): m' = 1, M' = 4 and gamma > 1, so the bound ||S + T||/(2 gamma) drops below w = 4.
    const ComplexMatrix d = ComplexMatrix::diagonal({1.0, 2.0});
    const auto inst = sandwich_instance(d, d, ComplexMatrix::identity(2));
    const HypothesisReport h = verify_hypotheses(InequalityId::GammaProduct, inst);
    EXPECT_TRUE(h.satisfied()) << h.failure();
    const CheckResult r = evaluate(InequalityId::GammaProduct, inst);
    EXPECT_NEAR(r.lhs, 4.0, 1e-9);
    EXPECT_NEAR(r.rhs, 4.0 * (1.0 - 0.0703125), 1e-12);
    EXPECT_EQ(r.status, Status::Violated);
}

TEST(Catalog, GammaHypothesesOnEnsembleSandwich) {
    const EnsembleSpec spec{3, SandwichTriple{0.5}, 1.0, 77};
    for (std::uint64_t i = 0; i < 10; ++i) {
        const EnsembleSample s = sample(spec, i);
        auto inst = sandwich_instance(s.a, s.b, s.x);
        EXPECT_TRUE(verify_hypotheses(InequalityId::GammaProduct, inst).satisfied());
        EXPECT_EQ(evaluate(InequalityId::GammaProduct, inst).status, Status::Holds);
    }
}

TEST(Catalog, MondPecaricHandExample) {
    CheckInstance inst;
    inst.a = ComplexMatrix::diagonal({1.0, 3.0});
    inst.f = ScalarFunction::power(2.0);
    const CVector x{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    const CheckResult r = pointwise_lemma_check(InequalityId::MondPecaric, inst, {x});
    EXPECT_EQ(r.status, Status::Holds);
    EXPECT_NEAR(r.lhs, 4.0, 1e-12);
    EXPECT_NEAR(r.rhs, 5.0, 1e-12);
}

TEST(Catalog, MixedSchwarzEqualityAtEigenvector) {
    CheckInstance inst;
    inst.a = ComplexMatrix{{2, 1}, {1, 2}};
    inst.pair = SchwarzPair::powers(0.5);
    const CVector x{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    const CheckResult r = pointwise_lemma_check(InequalityId::MixedSchwarz, inst, {x, x});
    EXPECT_EQ(r.status, Status::Holds);
    EXPECT_NEAR(r.lhs, 3.0, 1e-10);
    EXPECT_NEAR(r.slack, 0.0, 1e-10);
}

TEST(Catalog, DragomirVectorShape) {
    CheckInstance inst;
    const CVector z{1, 0};
    const CVector x{0.6, 0.8};
    const CheckResult r = pointwise_lemma_check(InequalityId::DragomirVector, inst, {z, x, x});
    EXPECT_EQ(r.status, Status::Holds);
    EXPECT_THROW(pointwise_lemma_check(InequalityId::DragomirVector, inst, {z, x}), Error);
    EXPECT_THROW(pointwise_lemma_check(InequalityId::NormSandwich, inst, {}), Error);
}

TEST(Catalog, SuperquadDefectVanishesOnDiagonal) {
    CheckInstance inst;
    inst.f = ScalarFunction::power(2.0);
    inst.scalars = {1.5, 1.5, 0.0, 0.0, 3.0, 3.0};
    const CheckResult r = pointwise_lemma_check(InequalityId::SuperquadDefect, inst, {});
    EXPECT_EQ(r.status, Status::Holds);
    for (const Link& l : r.links) EXPECT_NEAR(l.rhs - l.lhs, 0.0, 1e-12);
}

TEST(Catalog, NormConvexityHandExamples) {
    const auto sq = ScalarFunction::power(2.0);
    const ComplexMatrix a = ComplexMatrix::diagonal({2.0, 0.0});
    const ComplexMatrix b = ComplexMatrix::diagonal({0.0, 2.0});
    const CheckResult r = norm_convexity_check(sq, a, b, 0.5);
    EXPECT_EQ(r.status, Status::Holds);
    EXPECT_NEAR(r.lhs, 1.0, 1e-12);
    EXPECT_NEAR(r.rhs, 2.0, 1e-12);

    const ComplexMatrix p{{2, 1}, {1, 3}};
    const CheckResult eq = norm_convexity_check(sq, p, p, 0.3, true);
    EXPECT_EQ(eq.status, Status::Holds);
    EXPECT_NEAR(eq.slack, 0.0, 1e-9);

    const auto id = ScalarFunction::power(1.0);
    const ComplexMatrix q{{1, Complex{0, 1}}, {Complex{0, -1}, 4}};
    const CheckResult lin = norm_convexity_check(id, p, q, 0.7);
    EXPECT_NEAR(lin.lhs, lin.rhs, 1e-12);
}

TEST(Catalog, ClassifyStricterTest) {
    CheckResult r;
    r.id = InequalityId::RefinedConvexity;
    r.links.push_back({"refined", 2.0, 1.9, 2.1});
    classify(r, default_tol_rel);
    EXPECT_EQ(r.status, Status::Inconclusive);

    r.links = {{"refined", 2.0, 1.9, 1.95}};
    classify(r, default_tol_rel);
    EXPECT_EQ(r.status, Status::Violated);

    r.links = {{"plain", 2.0, 1.9, std::nullopt}};
    classify(r, default_tol_rel);
    EXPECT_EQ(r.status, Status::Violated);

    r.links = {{"tight", 2.0, 2.0 - 1e-9, std::nullopt}, {"loose", 1.0, 3.0, std::nullopt}};
    classify(r, default_tol_rel);
    EXPECT_EQ(r.status, Status::Holds);
    EXPECT_DOUBLE_EQ(r.lhs, 2.0);

    r.links.clear();
    classify(r, default_tol_rel);
    EXPECT_EQ(r.status, Status::NotApplicable);
}

TEST(Catalog, ConditionedImprovesGeneralProduct) {
    const EnsembleSpec spec{3, SandwichTriple{0.5}, 1.0, 5};
    for (std::uint64_t i = 0; i < 20; ++i) {
        const EnsembleSample s = sample(spec, i);
        auto inst = sandwich_instance(s.a, s.b, s.x);
        inst.r = 1.0;
        inst.v = 0.5;
        const CheckResult c = evaluate(InequalityId::ConditionedProduct, inst);
        ASSERT_EQ(c.status, Status::Holds) << c.reason;
        // With v = 1/2 and f = g = sqrt the general product bound uses the same S and T.
        const CheckResult g = evaluate(InequalityId::GeneralProduct, inst);
        ASSERT_EQ(g.status, Status::Holds);
        EXPECT_LE(c.rhs, g.rhs + 1e-9);
    }
}

TEST(Catalog, WsqLhsBelowSumNewLhs) {
    const EnsembleSpec spec{3, GenericComplex{}, 1.0, 6};
    for (std::uint64_t i = 0; i < 20; ++i) {
        const EnsembleSample s = sample(spec, i);
        const auto inst = pair_instance(s.a, s.b);
        const CheckResult w = evaluate(InequalityId::WsqSum, inst);
        const CheckResult n = evaluate(InequalityId::SumNewBound, inst);
        EXPECT_LE(w.lhs, n.lhs + 1e-9);
    }
}

TEST(Catalog, EvaluationErrorsBecomeNotApplicable) {
    CheckInstance inst;
    inst.a = ComplexMatrix::diagonal({0.0, 1.0});
    inst.b = ComplexMatrix::identity(2);
    inst.x = ComplexMatrix::identity(2);
    const CheckResult r = evaluate(InequalityId::GeoRadius, inst);
    EXPECT_EQ(r.status, Status::NotApplicable);
    EXPECT_FALSE(r.reason.empty());
}

class MemberSoundness : public ::testing::TestWithParam<InequalityId> {};

TEST_P(MemberSoundness, RandomInstancesHold) {
    const InequalityId id = GetParam();
    const SphereSampler sampler{3, 500, 20};
    for (std::size_t dim : {2u, 3u}) {
        const EnsembleSpec spec{dim, GenericComplex{}, 1.0, 2024};
        std::size_t checked = 0;
        for (std::size_t trial = 0; trial < 5; ++trial) {
            for (std::size_t draw = 0; draw < redraw_budget; ++draw) {
                const CheckInstance inst = make_instance(id, spec, trial, draw, sampler);
                const CheckResult r = evaluate(id, inst);
                if (r.status == Status::NotApplicable) continue;
                EXPECT_NE(r.status, Status::Violated) << "dim " << dim << " trial " << trial << " slack " << r.slack;
                ++checked;
                break;
            }
        }
        EXPECT_EQ(checked, 5u) << "dim " << dim;
    }
}

INSTANTIATE_TEST_SUITE_P(AllMembers, MemberSoundness, ::testing::ValuesIn(all_inequalities()),
                         [](const ::testing::TestParamInfo<InequalityId>& info) {
                             std::string name(to_string(info.param));
                             for (char& ch : name)
                                 if (ch == '-') ch = '_';
                             return name;
                         });
