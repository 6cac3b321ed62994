#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nrlab/ensembles.hpp"
#include "nrlab/function.hpp"
#include "nrlab/matrix.hpp"
#include "nrlab/sampler.hpp"

namespace nrlab {

enum class InequalityId {
    NormSandwich,
    KittanehChain,
    PowerMix,
    SumSqKittaneh,
    ProductPower,
    GeneralProduct,
    DragomirVector,
    SumNewBound,
    SumNewNormal,
    WsqSum,
    ConvexProduct,
    ConvexProductPower,
    ScalarRefinedAmgm,
    ConditionedProduct,
    ConditionedSpecials,
    GammaProduct,
    RefinedConvexity,
    ImprovedConvexProduct,
    SuperquadRadius,
    SuperquadPower,
    HosseiniGeo,
    HosseiniGeoNorms,
    EuclideanSandwich,
    FconnRadius,
    GeoRadius,
    MixedSchwarz,
    MondPecaric,
    NormConvexity,
    SuperquadDefect,
};

inline constexpr std::size_t inequality_count = 29;

/// Every member, in declaration order.
const std::array<InequalityId, inequality_count>& all_inequalities();

/// Kebab-case name, e.g. "sum-new-bound".
std::string_view to_string(InequalityId id);
/// Throws UnsupportedParameter listing the valid names.
InequalityId parse_inequality(std::string_view name);
/// The inequality in plain notation.
std::string_view formula(InequalityId id);
/// True for the members whose right-hand side subtracts a sampled infimum.
bool uses_sampled_infimum(InequalityId id);

/// Everything one check needs. Unused slots are ignored by a member.
struct CheckInstance {
    ComplexMatrix a;
    ComplexMatrix b;
    ComplexMatrix x;
    double r = 1.0;
    double v = 0.5;
    double p = 2.0;
    double q = 2.0;
    int form = 0;  ///< member-specific variant selector
    std::optional<ScalarFunction> f;
    std::optional<SchwarzPair> pair;
    std::vector<CVector> vectors;  ///< unit vectors (or free vectors where a lemma allows)
    std::vector<double> scalars;   ///< scalar members: (a, b, m, M) or (s, t) pairs
    SphereSampler sampler;

    std::size_t dim() const noexcept { return a.dim(); }
};

enum class Status { Holds, Violated, Inconclusive, NotApplicable };
std::string_view to_string(Status s);

struct HypothesisCheck {
    std::string name;
    bool met = false;
    bool gating = true;  ///< informational checks do not affect the verdict
    std::string detail;
};

struct HypothesisReport {
    std::vector<HypothesisCheck> conditions;
    std::optional<double> m;
    std::optional<double> M;

    bool satisfied() const noexcept;
    std::string failure() const;
};

/// One "lhs <= rhs" comparison of a (possibly chained) inequality. When the
/// right-hand side subtracts a sampled infimum, `rhs_without_infimum` is the
/// value with that term dropped.
struct Link {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<double> rhs_without_infimum;
};

struct CheckResult {
    InequalityId id{};
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    Status status = Status::NotApplicable;
    HypothesisReport hypotheses;
    std::optional<CVector> witness;
    std::string estimate_semantics;
    std::vector<Link> links;
    std::string reason;            ///< set for NotApplicable
    std::size_t sphere_samples = 0;  ///< samples behind the sampled infimum, if any
};

inline constexpr double default_tol_rel = 1e-8;

/// Checks the member's hypotheses on the instance; failures are reported.
HypothesisReport verify_hypotheses(InequalityId id, const CheckInstance& inst);

/// Evaluates both sides and classifies. Library errors raised while
/// evaluating become NotApplicable with the error text as reason.
CheckResult evaluate(InequalityId id, const CheckInstance& inst, double tol_rel = default_tol_rel);

/// Lemma members checked at the given vectors (pairs (x, y) for the mixed
/// Schwarz lemma, triples (z, x, y) for the vector lemma); scalar pairs
/// (s, t) for the superquadratic defect come from inst.scalars.
CheckResult pointwise_lemma_check(InequalityId id, const CheckInstance& inst,
                                  const std::vector<CVector>& vectors, double tol_rel = default_tol_rel);

/// Norm convexity (mu_term = false) or its refinement with the Jensen-gap term.
CheckResult norm_convexity_check(const ScalarFunction& f, const ComplexMatrix& a, const ComplexMatrix& b,
                                 double v, bool mu_term = false, const SphereSampler& sampler = {},
                                 double tol_rel = default_tol_rel);

/// Classifies a set of links under the holding rule
/// slack >= -tol_rel (1 + |lhs| + |rhs|) and fills lhs/rhs/slack from the
/// tightest link.
void classify(CheckResult& result, double tol_rel);

/// The parameter-grid instance used for trial `trial`, redraw `draw`. The
/// member decides which ensemble kind it needs; the ensemble's kind is used for
/// members that accept arbitrary operators.
CheckInstance make_instance(InequalityId id, const EnsembleSpec& ensemble, std::size_t trial,
                            std::size_t draw, const SphereSampler& sampler = {});

inline constexpr std::size_t redraw_budget = 100;

}  // namespace nrlab
