#include "nrlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <variant>

#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"
#include "nrlab/means.hpp"
#include "nrlab/numrad.hpp"
#include "nrlab/rng.hpp"

namespace nrlab {

namespace {

struct MemberInfo {
    InequalityId id;
    std::string_view name;
    std::string_view formula;
    bool sampled_infimum;
};

constexpr std::array<MemberInfo, inequality_count> members{{
    {InequalityId::NormSandwich, "norm-sandwich", "||A||/2 <= w(A) <= ||A||", false},
    {InequalityId::KittanehChain, "kittaneh-chain",
     "w(A) <= || |A| + |A*| ||/2 <= (||A|| + ||A^2||^{1/2})/2", false},
    {InequalityId::PowerMix, "power-mix", "w^r(A) <= || |A|^{2rv} + |A*|^{2r(1-v)} ||/2, r >= 1, 0 < v < 1",
     false},
    {InequalityId::SumSqKittaneh, "sum-sq-kittaneh",
     "||A+B||^2 <= || |A|^2 + |B|^2 || + || |A*|^2 + |B*|^2 ||", false},
    {InequalityId::ProductPower, "product-power", "w^r(B*A) <= || |A|^{2r} + |B|^{2r} ||/2, r >= 1", false},
    {InequalityId::GeneralProduct, "general-product",
     "w^r(A*XB) <= || (A*|X*|^{2v}A)^r + (B*|X|^{2(1-v)}B)^r ||/2, r >= 1, 0 < v < 1", false},
    {InequalityId::DragomirVector, "dragomir-vector",
     "|<z,x>|^2 + |<z,y>|^2 <= ||z||^2 max(||x||^2, ||y||^2) + |<x,y>|, ||z|| = 1", false},
    {InequalityId::SumNewBound, "sum-new-bound",
     "||A+B||^2 <= (|| |A*|^2 + |B*|^2 || + || |A*|^2 - |B*|^2 ||)/2 + w(BA*) + 2||A|| ||B||", false},
    {InequalityId::SumNewNormal, "sum-new-normal",
     "||A+B||^2 <= (|| |A|^2 + |B|^2 || + || |A|^2 - |B|^2 ||)/2 + w(BA*) + 2||A|| ||B||, A, B normal",
     false},
    {InequalityId::WsqSum, "wsq-sum",
     "w^2(A+B) <= (|| |A*|^2 + |B*|^2 || + || |A*|^2 - |B*|^2 ||)/2 + w(BA*) + 2w(A)w(B)", false},
    {InequalityId::ConvexProduct, "convex-product",
     "h(w^2(A*XB)) <= ||(1-v)h(S^{1/(1-v)}) + v h(T^{1/v})||, S = B*f^2(|X|)B, T = A*g^2(|X*|)A", false},
    {InequalityId::ConvexProductPower, "convex-product-power", "w^{2r}(A*XB) <= ||S^{2r} + T^{2r}||/2, r >= 1",
     false},
    {InequalityId::ScalarRefinedAmgm, "scalar-refined-amgm",
     "(M+m)/(2 sqrt(Mm)) sqrt(ab) <= (a+b)/2, min(a,b) <= m < M <= max(a,b)", false},
    {InequalityId::ConditionedProduct, "conditioned-product",
     "h(w(A*XB)) <= sqrt(Mm)/(M+m) ||h(S) + h(T)||, 0 < S <= m < M <= T (or S, T swapped)", false},
    {InequalityId::ConditionedSpecials, "conditioned-specials",
     "w^r(A*XB) <= sqrt(Mm)/(M+m) ||S^r + T^r|| for f = t^{1-v}, g = t^v; A = B = I; or X = I", false},
    {InequalityId::GammaProduct, "gamma-product",
     "h(w(A*XB)) <= ||h(S) + h(T)||/(2 gamma), gamma = (1 - (1 - m'/M')^2/8)^{-1}, "
     "m' <= S <= T <= M' (or S, T swapped)",
     false},
    {InequalityId::RefinedConvexity, "refined-convexity",
     "||f((1-v)A + vB)|| <= ||(1-v)f(A) + v f(B)|| - min(v,1-v) mu(f)", true},
    {InequalityId::ImprovedConvexProduct, "improved-convex-product",
     "h(w^2(A*XB)) <= ||(1-v)h(P) + v h(Q)|| - min(v,1-v) inf_x [h(<Px,x>) + h(<Qx,x>) - 2h(<(P+Q)x,x>/2)], "
     "P = S^{1/(1-v)}, Q = T^{1/v}",
     true},
    {InequalityId::SuperquadRadius, "superquad-radius",
     "f(w(A)) <= ||f(|A|)|| - inf_x <f(| |A| - w(A) |)x, x>", false},
    {InequalityId::SuperquadPower, "superquad-power",
     "w^r(A) <= ||A||^r - inf_x || | |A| - w(A) |^{r/2} x ||^2 (r >= 2); "
     "w(A) <= (||A||^2 - inf_x ||(|A| - w(A))x||^2)^{1/2} <= ||A||",
     false},
    {InequalityId::HosseiniGeo, "hosseini-geo",
     "w^r((A#B)X) <= ||A^{rp/2}/p + (X*BX)^{rq/2}/q|| - inf_x delta(x)/p, "
     "delta(x) = (<Ax,x>^{rp/4} - <X*BXx,x>^{rq/4})^2",
     true},
    {InequalityId::HosseiniGeoNorms, "hosseini-geo-norms",
     "||A#B||^r, ||A#B||^{2r} and ||A#B||^2 bounded by refined Young terms minus sampled infima", true},
    {InequalityId::EuclideanSandwich, "euclidean-sandwich", "sqrt(2)||A#B|| <= w_e(A,B) <= ||A^2 + B^2||^{1/2}",
     false},
    {InequalityId::FconnRadius, "fconn-radius",
     "w((A s_f B)X) <= ||X* A^{1/2} f^2(A^{-1/2}BA^{-1/2}) A^{1/2} X + A||/2", false},
    {InequalityId::GeoRadius, "geo-radius", "w((A#B)X) <= ||X*BX + A||/2", false},
    {InequalityId::MixedSchwarz, "mixed-schwarz", "|<Ax,y>| <= ||f(|A|)x|| ||g(|A*|)y||, f(t)g(t) = t", false},
    {InequalityId::MondPecaric, "mond-pecaric",
     "f(<Ax,x>) <= <f(A)x,x> for convex f, reversed for concave f, ||x|| = 1", false},
    {InequalityId::NormConvexity, "norm-convexity", "||f((1-v)A + vB)|| <= ||(1-v)f(A) + v f(B)||", false},
    {InequalityId::SuperquadDefect, "superquad-defect", "f(|t-s|) + C_s(t-s) + f(s) <= f(t), C_s = f'(s)",
     false},
}};

const MemberInfo& info(InequalityId id) { return members[static_cast<std::size_t>(id)]; }

constexpr std::string_view sampled_semantics =
    "infimum replaced by a sampled minimum plus compass descent, an upper bound of the true infimum; "
    "the computed rhs is therefore a lower bound of the true rhs (stricter test)";
constexpr std::string_view radius_semantics = "w from the angle sweep with golden-section refinement";
constexpr std::string_view exact_semantics = "all terms from spectral decompositions";

// ---------------------------------------------------------------- helpers

double w_of(const ComplexMatrix& m) { return numerical_radius(m).value; }

// f(|Y|) given Y*Y (or g(|Y*|) given YY*).
ComplexMatrix abs_fn(const ScalarFunction& f, const ComplexMatrix& gram_like) {
    return apply_spectral(hermitian_eigen(gram_like), [&](double t) { return f(std::sqrt(std::max(t, 0.0))); });
}

ComplexMatrix abs_fn_square(const ScalarFunction& f, const ComplexMatrix& gram_like) {
    return apply_spectral(hermitian_eigen(gram_like), [&](double t) {
        const double v = f(std::sqrt(std::max(t, 0.0)));
        return v * v;
    });
}

struct SandwichOperands {
    ComplexMatrix s;  // B* f^2(|X|) B
    ComplexMatrix t;  // A* g^2(|X*|) A
};

SandwichOperands sandwich_operands(const CheckInstance& inst) {
    return {congruence(inst.b, abs_fn_square(inst.pair->f(), gram(inst.x))),
            congruence(inst.a, abs_fn_square(inst.pair->g(), cogram(inst.x)))};
}

Link link(std::string label, double lhs, double rhs) { return Link{std::move(label), lhs, rhs, std::nullopt}; }

Link sampled_link(std::string label, double lhs, double rhs_with, double rhs_without) {
    return Link{std::move(label), lhs, rhs_with, rhs_without};
}

double pw(double x, double e) { return e == 1.0 ? x : std::pow(x, e); }

double psd_scale(const std::vector<double>& ev) { return std::max(std::abs(ev.front()), std::abs(ev.back())); }

HypothesisCheck check_psd(const std::string& name, const ComplexMatrix& m) {
    if (!is_hermitian(m)) return {name + " is positive", false, true, "not Hermitian"};
    const auto ev = hermitian_eigenvalues(m);
    const bool ok = ev.front() >= -tolerance::herm * (1.0 + psd_scale(ev));
    return {name + " is positive", ok, true, "lambda_min = " + std::to_string(ev.front())};
}

HypothesisCheck check_positive_invertible(const std::string& name, const ComplexMatrix& m) {
    if (!is_hermitian(m)) return {name + " is positive invertible", false, true, "not Hermitian"};
    const auto ev = hermitian_eigenvalues(m);
    const bool ok = ev.front() > tolerance::inv * psd_scale(ev) && ev.back() > 0.0;
    return {name + " is positive invertible", ok, true, "lambda_min = " + std::to_string(ev.front())};
}

HypothesisCheck check_range(const std::string& name, bool ok, double value) {
    return {name, ok, true, "value " + std::to_string(value)};
}

HypothesisCheck check_flag(const ScalarFunction& f, FunctionFlag flag, std::string_view label) {
    return {f.name() + " is " + std::string(label), f.has(flag), true, {}};
}

HypothesisCheck check_dims(const CheckInstance& inst, bool use_b, bool use_x) {
    const std::size_t n = inst.a.dim();
    bool ok = n >= 1;
    if (use_b) ok = ok && inst.b.dim() == n;
    if (use_x) ok = ok && inst.x.dim() == n;
    return {"operand dimensions agree", ok, true, "dim " + std::to_string(n)};
}

// ------------------------------------------------------- per-member bodies

struct Evaluation {
    std::vector<Link> links;
    std::optional<CVector> witness;
    std::string semantics;
    std::size_t samples = 0;
};

Evaluation eval_norm_sandwich(const CheckInstance& inst) {
    const RadiusResult w = numerical_radius(inst.a);
    const double n = operator_norm(inst.a);
    return {{link("||A||/2 <= w(A)", n / 2.0, w.value), link("w(A) <= ||A||", w.value, n)},
            w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_kittaneh_chain(const CheckInstance& inst) {
    const RadiusResult w = numerical_radius(inst.a);
    const double mid = hermitian_norm(abs_operator(inst.a) + abs_operator(adjoint(inst.a))) / 2.0;
    const double top = (operator_norm(inst.a) + std::sqrt(operator_norm(inst.a * inst.a))) / 2.0;
    return {{link("w(A) <= || |A| + |A*| ||/2", w.value, mid), link("|| |A| + |A*| ||/2 <= (||A|| + ||A^2||^{1/2})/2", mid, top)},
            w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_power_mix(const CheckInstance& inst) {
    const RadiusResult w = numerical_radius(inst.a);
    const ComplexMatrix sum = psd_power(gram(inst.a), inst.r * inst.v) + psd_power(cogram(inst.a), inst.r * (1.0 - inst.v));
    return {{link("w^r(A) <= || |A|^{2rv} + |A*|^{2r(1-v)} ||/2", pw(w.value, inst.r), hermitian_norm(sum) / 2.0)},
            w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_sum_sq_kittaneh(const CheckInstance& inst) {
    const double lhs = std::pow(operator_norm(inst.a + inst.b), 2);
    const double rhs = hermitian_norm(gram(inst.a) + gram(inst.b)) + hermitian_norm(cogram(inst.a) + cogram(inst.b));
    return {{link("||A+B||^2 <= || |A|^2 + |B|^2 || + || |A*|^2 + |B*|^2 ||", lhs, rhs)}, std::nullopt,
            std::string(exact_semantics)};
}

Evaluation eval_product_power(const CheckInstance& inst) {
    const RadiusResult w = numerical_radius(adjoint(inst.b) * inst.a);
    const double rhs = hermitian_norm(psd_power(gram(inst.a), inst.r) + psd_power(gram(inst.b), inst.r)) / 2.0;
    return {{link("w^r(B*A) <= || |A|^{2r} + |B|^{2r} ||/2", pw(w.value, inst.r), rhs)}, w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_general_product(const CheckInstance& inst) {
    const RadiusResult w = numerical_radius(adjoint(inst.a) * inst.x * inst.b);
    const ComplexMatrix left = congruence(inst.a, psd_power(cogram(inst.x), inst.v));
    const ComplexMatrix right = congruence(inst.b, psd_power(gram(inst.x), 1.0 - inst.v));
    const double rhs = hermitian_norm(psd_power(left, inst.r) + psd_power(right, inst.r)) / 2.0;
    return {{link("w^r(A*XB) <= ||(A*|X*|^{2v}A)^r + (B*|X|^{2(1-v)}B)^r||/2", pw(w.value, inst.r), rhs)}, w.witness,
            std::string(radius_semantics)};
}

// (|| |A*|^2 + |B*|^2 || + || |A*|^2 - |B*|^2 ||)/2 + w(BA*), with |.|^2 built by `sq`.
template <typename Sq>
double sum_bound_core(const ComplexMatrix& a, const ComplexMatrix& b, Sq sq) {
    const ComplexMatrix pa = sq(a);
    const ComplexMatrix pb = sq(b);
    return (hermitian_norm(pa + pb) + hermitian_norm(pa - pb)) / 2.0 + w_of(b * adjoint(a));
}

Evaluation eval_sum_new_bound(const CheckInstance& inst) {
    const double lhs = std::pow(operator_norm(inst.a + inst.b), 2);
    const double rhs = sum_bound_core(inst.a, inst.b, [](const ComplexMatrix& m) { return cogram(m); }) +
                       2.0 * operator_norm(inst.a) * operator_norm(inst.b);
    return {{link("||A+B||^2 <= new sum bound", lhs, rhs)}, std::nullopt, std::string(radius_semantics)};
}

Evaluation eval_sum_new_normal(const CheckInstance& inst) {
    const double lhs = std::pow(operator_norm(inst.a + inst.b), 2);
    const double rhs = sum_bound_core(inst.a, inst.b, [](const ComplexMatrix& m) { return gram(m); }) +
                       2.0 * operator_norm(inst.a) * operator_norm(inst.b);
    return {{link("||A+B||^2 <= new sum bound with |A|, |B|", lhs, rhs)}, std::nullopt, std::string(radius_semantics)};
}

Evaluation eval_wsq_sum(const CheckInstance& inst) {
    const RadiusResult w = numerical_radius(inst.a + inst.b);
    const double rhs = sum_bound_core(inst.a, inst.b, [](const ComplexMatrix& m) { return cogram(m); }) +
                       2.0 * w_of(inst.a) * w_of(inst.b);
    return {{link("w^2(A+B) <= sum bound with 2w(A)w(B)", w.value * w.value, rhs)}, w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_convex_product(const CheckInstance& inst) {
    const auto [s, t] = sandwich_operands(inst);
    const ScalarFunction& h = *inst.f;
    const RadiusResult w = numerical_radius(adjoint(inst.a) * inst.x * inst.b);
    const ComplexMatrix p = psd_power(s, 1.0 / (1.0 - inst.v));
    const ComplexMatrix q = psd_power(t, 1.0 / inst.v);
    const ComplexMatrix mix =
        (1.0 - inst.v) * apply_scalar_function(h, p) + inst.v * apply_scalar_function(h, q);
    return {{link("h(w^2(A*XB)) <= ||(1-v)h(S^{1/(1-v)}) + v h(T^{1/v})||", h(w.value * w.value), hermitian_norm(mix))},
            w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_convex_product_power(const CheckInstance& inst) {
    const auto [s, t] = sandwich_operands(inst);
    const RadiusResult w = numerical_radius(adjoint(inst.a) * inst.x * inst.b);
    const double rhs = hermitian_norm(psd_power(s, 2.0 * inst.r) + psd_power(t, 2.0 * inst.r)) / 2.0;
    return {{link("w^{2r}(A*XB) <= ||S^{2r} + T^{2r}||/2", pw(w.value, 2.0 * inst.r), rhs)}, w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_scalar_refined_amgm(const CheckInstance& inst) {
    Evaluation e;
    e.semantics = "scalar arithmetic";
    for (std::size_t k = 0; k + 4 <= inst.scalars.size(); k += 4) {
        const double a = inst.scalars[k];
        const double b = inst.scalars[k + 1];
        const double m = inst.scalars[k + 2];
        const double M = inst.scalars[k + 3];
        e.links.push_back(link("(M+m)/(2 sqrt(Mm)) sqrt(ab) <= (a+b)/2", refined_amgm_factor(m, M) * std::sqrt(a * b),
                               (a + b) / 2.0));
    }
    return e;
}

struct ConditionedBounds {
    ComplexMatrix s;
    ComplexMatrix t;
    double m = 0.0;
    double M = 0.0;
};

// Both orderings of the gap condition; nullopt when neither holds.
std::optional<ConditionedBounds> conditioned_bounds(const CheckInstance& inst, std::string* detail = nullptr) {
    auto [s, t] = sandwich_operands(inst);
    const auto es = hermitian_eigenvalues(s);
    const auto et = hermitian_eigenvalues(t);
    auto try_order = [&](const std::vector<double>& lo, const std::vector<double>& hi) -> std::optional<ConditionedBounds> {
        const double m = lo.back();
        const double M = hi.front();
        if (lo.front() > tolerance::inv * psd_scale(lo) && lo.front() > 0.0 && m < M) {
            return ConditionedBounds{s, t, m, M};
        }
        return std::nullopt;
    };
    if (auto r = try_order(es, et)) return r;
    if (auto r = try_order(et, es)) return r;
    if (detail) {
        *detail = "spec(S) = [" + std::to_string(es.front()) + ", " + std::to_string(es.back()) + "], spec(T) = [" +
                  std::to_string(et.front()) + ", " + std::to_string(et.back()) + "]";
    }
    return std::nullopt;
}

Evaluation eval_conditioned(const CheckInstance& inst) {
    const auto bounds = conditioned_bounds(inst);
    if (!bounds) throw Error(ErrorKind::InvalidBounds, "no spectral gap between S and T");
    const ScalarFunction& h = *inst.f;
    const RadiusResult w = numerical_radius(adjoint(inst.a) * inst.x * inst.b);
    const double factor = 1.0 / (2.0 * refined_amgm_factor(bounds->m, bounds->M));
    const double rhs = factor * hermitian_norm(apply_scalar_function(h, bounds->s) + apply_scalar_function(h, bounds->t));
    return {{link("h(w(A*XB)) <= sqrt(Mm)/(M+m) ||h(S) + h(T)||", h(w.value), rhs)}, w.witness,
            std::string(radius_semantics)};
}

struct GammaBounds {
    double m_lo = 0.0;
    double M_hi = 0.0;
};

GammaBounds gamma_bounds(const ComplexMatrix& s, const ComplexMatrix& t) {
    const auto es = hermitian_eigenvalues(s);
    const auto et = hermitian_eigenvalues(t);
    return {std::min(es.front(), et.front()), std::max(es.back(), et.back())};
}

Evaluation eval_gamma_product(const CheckInstance& inst) {
    const auto [s, t] = sandwich_operands(inst);
    const GammaBounds gb = gamma_bounds(s, t);
    const ScalarFunction& h = *inst.f;
    const RadiusResult w = numerical_radius(adjoint(inst.a) * inst.x * inst.b);
    const double gamma = gamma_factor(gb.m_lo, gb.M_hi);
    const double rhs = hermitian_norm(apply_scalar_function(h, s) + apply_scalar_function(h, t)) / (2.0 * gamma);
    return {{link("h(w(A*XB)) <= ||h(S) + h(T)||/(2 gamma)", h(w.value), rhs)}, w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_improved_convex_product(const CheckInstance& inst) {
    const auto [s, t] = sandwich_operands(inst);
    const ScalarFunction& h = *inst.f;
    const RadiusResult w = numerical_radius(adjoint(inst.a) * inst.x * inst.b);
    const ComplexMatrix p = psd_power(s, 1.0 / (1.0 - inst.v));
    const ComplexMatrix q = psd_power(t, 1.0 / inst.v);
    const double base =
        hermitian_norm((1.0 - inst.v) * apply_scalar_function(h, p) + inst.v * apply_scalar_function(h, q));
    const SphereEstimate gap = jensen_gap_mu(h, p, q, inst.sampler);
    const double weight = std::min(inst.v, 1.0 - inst.v);
    Evaluation e{{sampled_link("h(w^2(A*XB)) <= ||(1-v)h(P) + v h(Q)|| - min(v,1-v) gamma(f)", h(w.value * w.value),
                               base - weight * gap.value, base)},
                 w.witness,
                 std::string(sampled_semantics),
                 gap.samples};
    return e;
}

// inf over unit x of <f(| |A| - w |) x, x> equals lambda_min of that operator.
double superquad_infimum(const ScalarFunction& f, const HermitianEigen& abs_a, double w) {
    const ComplexMatrix m = apply_spectral(abs_a, [&](double t) { return f(std::abs(t - w)); });
    return lambda_min(m);
}

HermitianEigen abs_eigen(const ComplexMatrix& a) {
    HermitianEigen eig = hermitian_eigen(gram(a));
    for (double& l : eig.eigenvalues) l = std::sqrt(std::max(l, 0.0));
    return eig;
}

Evaluation eval_superquad_radius(const CheckInstance& inst) {
    const ScalarFunction& f = *inst.f;
    const RadiusResult w = numerical_radius(inst.a);
    const HermitianEigen abs_a = abs_eigen(inst.a);
    const double top = hermitian_norm(apply_spectral(abs_a, [&](double t) { return f(t); }));
    const double inf = superquad_infimum(f, abs_a, w.value);
    return {{link("f(w(A)) <= ||f(|A|)|| - inf <f(||A| - w|)x, x>", f(w.value), top - inf)}, w.witness,
            "w from the angle sweep; the infimum is the smallest eigenvalue, computed exactly"};
}

Evaluation eval_superquad_power(const CheckInstance& inst) {
    const RadiusResult w = numerical_radius(inst.a);
    const HermitianEigen abs_a = abs_eigen(inst.a);
    const double n = operator_norm(inst.a);
    const ScalarFunction fr = ScalarFunction::power(inst.r);
    const ScalarFunction sq = ScalarFunction::power(2.0);
    const double inf_r = superquad_infimum(fr, abs_a, w.value);
    const double inf_2 = superquad_infimum(sq, abs_a, w.value);
    const double mid = std::sqrt(std::max(n * n - inf_2, 0.0));
    return {{link("w^r(A) <= ||A||^r - inf || ||A| - w|^{r/2} x ||^2", pw(w.value, inst.r), pw(n, inst.r) - inf_r),
             link("w(A) <= (||A||^2 - inf ||(|A| - w)x||^2)^{1/2}", w.value, mid),
             link("(||A||^2 - inf ||(|A| - w)x||^2)^{1/2} <= ||A||", mid, n)},
            w.witness,
            "w from the angle sweep; the infima are smallest eigenvalues, computed exactly"};
}

// inf over unit x of (<Px,x>^a - <Qx,x>^b)^2.
SphereEstimate young_defect_infimum(const ComplexMatrix& p, const ComplexMatrix& q, double ea, double eb,
                                    const SphereSampler& sampler) {
    return sphere_inf(
        [&](std::span<const Complex> x) {
            const double u = std::max(hermitian_form(p, x), 0.0);
            const double v = std::max(hermitian_form(q, x), 0.0);
            const double d = pw(u, ea) - pw(v, eb);
            return d * d;
        },
        p.dim(), sampler);
}

Evaluation eval_hosseini_geo(const CheckInstance& inst) {
    const double r = inst.r;
    const double p = inst.p;
    const double q = inst.q;
    const ComplexMatrix g = weighted_geometric({inst.a, inst.b, 0.5});
    const RadiusResult w = numerical_radius(g * inst.x);
    const ComplexMatrix xbx = congruence(inst.x, inst.b);
    const double base = hermitian_norm((1.0 / p) * psd_power(inst.a, r * p / 2.0) + (1.0 / q) * psd_power(xbx, r * q / 2.0));
    const SphereEstimate delta = young_defect_infimum(inst.a, xbx, r * p / 4.0, r * q / 4.0, inst.sampler);
    return {{sampled_link("w^r((A#B)X) <= ||A^{rp/2}/p + (X*BX)^{rq/2}/q|| - inf delta/p", pw(w.value, r),
                          base - delta.value / p, base)},
            w.witness,
            std::string(sampled_semantics),
            delta.samples};
}

Evaluation eval_hosseini_geo_norms(const CheckInstance& inst) {
    const double r = inst.r;
    const double p = inst.p;
    const double q = inst.q;
    const double g = hermitian_norm(weighted_geometric({inst.a, inst.b, 0.5}));
    Evaluation e;
    e.semantics = std::string(sampled_semantics);

    const double base1 = hermitian_norm((1.0 / p) * psd_power(inst.a, r * p / 2.0) + (1.0 / q) * psd_power(inst.b, r * q / 2.0));
    const SphereEstimate d1 = young_defect_infimum(inst.a, inst.b, r * p / 4.0, r * q / 4.0, inst.sampler);
    e.links.push_back(sampled_link("||A#B||^r <= ||A^{rp/2}/p + B^{rq/2}/q|| - inf/p", pw(g, r), base1 - d1.value / p, base1));

    const double base2 = hermitian_norm((1.0 / p) * psd_power(inst.a, r * p) + (1.0 / q) * psd_power(inst.b, r * q));
    const SphereEstimate d2 = young_defect_infimum(inst.a, inst.b, r * p / 2.0, r * q / 2.0, inst.sampler);
    e.links.push_back(sampled_link("||A#B||^{2r} <= ||A^{rp}/p + B^{rq}/q|| - inf/p", pw(g, 2.0 * r), base2 - d2.value / p, base2));

    const double base3 = hermitian_norm(0.5 * (gram(inst.a) + gram(inst.b)));
    const ComplexMatrix diff = inst.a - inst.b;
    const SphereEstimate d3 = sphere_inf(
        [&](std::span<const Complex> x) {
            const double v = hermitian_form(diff, x);
            return v * v;
        },
        inst.a.dim(), inst.sampler);
    e.links.push_back(sampled_link("||A#B||^2 <= ||(A^2 + B^2)/2|| - inf <(A-B)x,x>^2/2", g * g, base3 - d3.value / 2.0, base3));
    e.samples = d1.samples;
    return e;
}

Evaluation eval_euclidean_sandwich(const CheckInstance& inst) {
    const double g = hermitian_norm(weighted_geometric({inst.a, inst.b, 0.5}));
    // For Hermitian A, B: |<Ax,x>|^2 + |<Bx,x>|^2 = |<(A + iB)x, x>|^2.
    const RadiusResult we = numerical_radius(inst.a + Complex{0.0, 1.0} * inst.b);
    const double top = std::sqrt(hermitian_norm(gram(inst.a) + gram(inst.b)));
    return {{link("sqrt(2)||A#B|| <= w_e(A,B)", std::numbers::sqrt2 * g, we.value),
             link("w_e(A,B) <= ||A^2 + B^2||^{1/2}", we.value, top)},
            we.witness,
            "w_e(A,B) = w(A + iB) for Hermitian A, B, from the angle sweep"};
}

Evaluation eval_fconn_radius(const CheckInstance& inst) {
    const ScalarFunction& f = *inst.f;
    const RadiusResult w = numerical_radius(f_connection(inst.a, inst.b, f) * inst.x);
    const ComplexMatrix mid = congruence(inst.x, f_connection_square(inst.a, inst.b, f));
    return {{link("w((A s_f B)X) <= ||X* A^{1/2} f^2(.) A^{1/2} X + A||/2", w.value, hermitian_norm(mid + inst.a) / 2.0)},
            w.witness,
            std::string(radius_semantics)};
}

Evaluation eval_geo_radius(const CheckInstance& inst) {
    const RadiusResult w = numerical_radius(weighted_geometric({inst.a, inst.b, 0.5}) * inst.x);
    const double rhs = hermitian_norm(congruence(inst.x, inst.b) + inst.a) / 2.0;
    return {{link("w((A#B)X) <= ||X*BX + A||/2", w.value, rhs)}, w.witness, std::string(radius_semantics)};
}

double weight_of(double v) { return std::min(v, 1.0 - v); }

}  // namespace

// ------------------------------------------------------------- public API

const std::array<InequalityId, inequality_count>& all_inequalities() {
    static const std::array<InequalityId, inequality_count> ids = [] {
        std::array<InequalityId, inequality_count> out{};
        for (std::size_t k = 0; k < inequality_count; ++k) out[k] = members[k].id;
        return out;
    }();
    return ids;
}

std::string_view to_string(InequalityId id) { return info(id).name; }

InequalityId parse_inequality(std::string_view name) {
    for (const auto& m : members)
        if (m.name == name) return m.id;
    std::string valid;
    for (const auto& m : members) {
        if (!valid.empty()) valid += ", ";
        valid += m.name;
    }
    throw Error(ErrorKind::UnsupportedParameter, "unknown inequality '" + std::string(name) + "'; valid ids: " + valid);
}

std::string_view formula(InequalityId id) { return info(id).formula; }

bool uses_sampled_infimum(InequalityId id) { return info(id).sampled_infimum; }

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Violated: return "violated";
        case Status::Inconclusive: return "inconclusive";
        case Status::NotApplicable: return "not_applicable";
    }
    return "unknown";
}

bool HypothesisReport::satisfied() const noexcept {
    return std::all_of(conditions.begin(), conditions.end(), [](const HypothesisCheck& c) { return c.met || !c.gating; });
}

std::string HypothesisReport::failure() const {
    std::string out;
    for (const auto& c : conditions) {
        if (c.met || !c.gating) continue;
        if (!out.empty()) out += "; ";
        out += c.name;
        if (!c.detail.empty()) out += " (" + c.detail + ")";
    }
    return out;
}

HypothesisReport verify_hypotheses(InequalityId id, const CheckInstance& inst) {
    HypothesisReport rep;
    auto& c = rep.conditions;
    auto need_f = [&](std::string_view role) -> bool {
        if (!inst.f) {
            c.push_back({std::string(role) + " function selected", false, true, {}});
            return false;
        }
        return true;
    };
    auto need_pair = [&]() -> bool {
        if (!inst.pair) {
            c.push_back({"Schwarz pair selected", false, true, {}});
            return false;
        }
        return true;
    };
    auto open_weight = [&]() { c.push_back(check_range("0 < v < 1", inst.v > 0.0 && inst.v < 1.0, inst.v)); };
    auto r_at_least = [&](double lo) {
        c.push_back(check_range("r >= " + std::to_string(static_cast<int>(lo)), inst.r >= lo, inst.r));
    };
    auto convex_increasing = [&](const ScalarFunction& h) {
        c.push_back(check_flag(h, FunctionFlag::NonNegative, "non-negative"));
        c.push_back(check_flag(h, FunctionFlag::Increasing, "increasing"));
        c.push_back(check_flag(h, FunctionFlag::Convex, "convex"));
    };

    try {
        switch (id) {
            case InequalityId::NormSandwich:
            case InequalityId::KittanehChain:
                c.push_back(check_dims(inst, false, false));
                break;
            case InequalityId::PowerMix:
                c.push_back(check_dims(inst, false, false));
                r_at_least(1.0);
                open_weight();
                break;
            case InequalityId::SumSqKittaneh:
            case InequalityId::SumNewBound:
            case InequalityId::WsqSum:
                c.push_back(check_dims(inst, true, false));
                break;
            case InequalityId::ProductPower:
                c.push_back(check_dims(inst, true, false));
                r_at_least(1.0);
                break;
            case InequalityId::GeneralProduct:
                c.push_back(check_dims(inst, true, true));
                r_at_least(1.0);
                open_weight();
                break;
            case InequalityId::SumNewNormal: {
                c.push_back(check_dims(inst, true, false));
                for (const auto* m : {&inst.a, &inst.b}) {
                    const ComplexMatrix comm = gram(*m) - cogram(*m);
                    const double scale = std::pow(frobenius_norm(*m), 2);
                    const double defect = frobenius_norm(comm);
                    c.push_back({std::string(m == &inst.a ? "A" : "B") + " is normal",
                                 defect <= tolerance::herm * (1.0 + scale), true,
                                 "||M*M - MM*|| = " + std::to_string(defect)});
                }
                break;
            }
            case InequalityId::DragomirVector: {
                const bool shape = !inst.vectors.empty() && inst.vectors.size() % 3 == 0;
                c.push_back({"vectors come in (z, x, y) triples", shape, true, {}});
                bool unit = shape;
                for (std::size_t k = 0; shape && k < inst.vectors.size(); k += 3) {
                    unit = unit && std::abs(norm(inst.vectors[k]) - 1.0) <= 1e-12;
                }
                c.push_back({"||z|| = 1", unit, true, {}});
                break;
            }
            case InequalityId::ConvexProduct:
            case InequalityId::ImprovedConvexProduct:
                c.push_back(check_dims(inst, true, true));
                open_weight();
                if (need_f("h")) convex_increasing(*inst.f);
                need_pair();
                break;
            case InequalityId::ConvexProductPower:
                c.push_back(check_dims(inst, true, true));
                r_at_least(1.0);
                need_pair();
                break;
            case InequalityId::ScalarRefinedAmgm: {
                const bool shape = !inst.scalars.empty() && inst.scalars.size() % 4 == 0;
                c.push_back({"scalars come in (a, b, m, M) groups", shape, true, {}});
                for (std::size_t k = 0; shape && k < inst.scalars.size(); k += 4) {
                    const double a = inst.scalars[k], b = inst.scalars[k + 1];
                    const double m = inst.scalars[k + 2], M = inst.scalars[k + 3];
                    const bool ok = a > 0 && b > 0 && m > 0 && std::min(a, b) <= m && m < M && M <= std::max(a, b);
                    c.push_back({"min(a,b) <= m < M <= max(a,b)", ok, true,
                                 "a=" + std::to_string(a) + " b=" + std::to_string(b) + " m=" + std::to_string(m) +
                                     " M=" + std::to_string(M)});
                }
                break;
            }
            case InequalityId::ConditionedProduct:
            case InequalityId::ConditionedSpecials: {
                c.push_back(check_dims(inst, true, true));
                if (need_f("h")) convex_increasing(*inst.f);
                if (!need_pair()) break;
                std::string detail;
                const auto bounds = conditioned_bounds(inst, &detail);
                c.push_back({"0 < lower <= m < M <= upper for S, T in some order", bounds.has_value(), true,
                             bounds ? "m = " + std::to_string(bounds->m) + ", M = " + std::to_string(bounds->M) : detail});
                if (bounds) {
                    rep.m = bounds->m;
                    rep.M = bounds->M;
                }
                break;
            }
            case InequalityId::GammaProduct: {
                c.push_back(check_dims(inst, true, true));
                if (need_f("h")) convex_increasing(*inst.f);
                if (!need_pair()) break;
                const auto [s, t] = sandwich_operands(inst);
                const GammaBounds gb = gamma_bounds(s, t);
                rep.m = gb.m_lo;
                rep.M = gb.M_hi;
                const bool positive = gb.m_lo > tolerance::inv * std::abs(gb.M_hi);
                const bool ordered = loewner_leq(s, t) || loewner_leq(t, s);
                c.push_back({"0 < m' <= S, T <= M'", positive, true,
                             "m' = " + std::to_string(gb.m_lo) + ", M' = " + std::to_string(gb.M_hi)});
                c.push_back({"S <= T or T <= S with T = A* g^2(|X*|) A", ordered, true, {}});
                // The alternative reading with g^2(|X|) is reported, not enforced.
                const ComplexMatrix t_alt = congruence(inst.a, abs_fn_square(inst.pair->g(), gram(inst.x)));
                const bool alt = loewner_leq(s, t_alt) || loewner_leq(t_alt, s);
                c.push_back({"S <= T' or T' <= S with T' = A* g^2(|X|) A", alt, false, "informational"});
                break;
            }
            case InequalityId::RefinedConvexity:
            case InequalityId::NormConvexity:
                c.push_back(check_dims(inst, true, false));
                c.push_back(check_psd("A", inst.a));
                c.push_back(check_psd("B", inst.b));
                open_weight();
                if (need_f("f")) convex_increasing(*inst.f);
                break;
            case InequalityId::SuperquadRadius:
                c.push_back(check_dims(inst, false, false));
                if (need_f("f")) {
                    c.push_back(check_flag(*inst.f, FunctionFlag::NonNegative, "non-negative"));
                    c.push_back(check_flag(*inst.f, FunctionFlag::Superquadratic, "superquadratic"));
                }
                break;
            case InequalityId::SuperquadPower:
                c.push_back(check_dims(inst, false, false));
                r_at_least(2.0);
                break;
            case InequalityId::HosseiniGeo:
            case InequalityId::HosseiniGeoNorms: {
                c.push_back(check_dims(inst, true, id == InequalityId::HosseiniGeo));
                c.push_back(check_positive_invertible("A", inst.a));
                c.push_back(check_positive_invertible("B", inst.b));
                const bool conj = std::abs(1.0 / inst.p + 1.0 / inst.q - 1.0) <= 1e-12;
                c.push_back(check_range("p >= q > 1, 1/p + 1/q = 1", inst.p >= inst.q && inst.q > 1.0 && conj, inst.p));
                c.push_back(check_range("r >= 2/q", inst.r >= 2.0 / inst.q - 1e-12, inst.r));
                break;
            }
            case InequalityId::EuclideanSandwich:
                c.push_back(check_dims(inst, true, false));
                c.push_back(check_positive_invertible("A", inst.a));
                c.push_back(check_psd("B", inst.b));
                break;
            case InequalityId::FconnRadius:
                c.push_back(check_dims(inst, true, true));
                c.push_back(check_positive_invertible("A", inst.a));
                c.push_back(check_psd("B", inst.b));
                need_f("f");
                break;
            case InequalityId::GeoRadius:
                c.push_back(check_dims(inst, true, true));
                c.push_back(check_positive_invertible("A", inst.a));
                c.push_back(check_psd("B", inst.b));
                break;
            case InequalityId::MixedSchwarz: {
                c.push_back(check_dims(inst, false, false));
                need_pair();
                const bool shape = !inst.vectors.empty() && inst.vectors.size() % 2 == 0;
                bool dims = shape;
                for (const auto& v : inst.vectors) dims = dims && v.size() == inst.a.dim();
                c.push_back({"vectors come in (x, y) pairs of matching dimension", dims, true, {}});
                break;
            }
            case InequalityId::MondPecaric: {
                c.push_back(check_dims(inst, false, false));
                if (!need_f("f")) break;
                const ScalarFunction& f = *inst.f;
                c.push_back({f.name() + " is convex or concave", f.has(FunctionFlag::Convex) || f.has(FunctionFlag::Concave),
                             true, {}});
                const bool herm = is_hermitian(inst.a);
                c.push_back({"A is self-adjoint", herm, true, {}});
                if (herm) {
                    const auto ev = hermitian_eigenvalues(inst.a);
                    const auto& dom = f.domain();
                    const double slack = tolerance::herm * psd_scale(ev);
                    const bool lo_ok = dom.contains(ev.front()) || (dom.lo_closed && ev.front() >= dom.lo - slack);
                    const bool hi_ok = dom.contains(ev.back()) || (dom.hi_closed && ev.back() <= dom.hi + slack);
                    c.push_back({"spectrum of A inside the domain of " + f.name(), lo_ok && hi_ok, true, {}});
                }
                bool unit = !inst.vectors.empty();
                for (const auto& v : inst.vectors) unit = unit && v.size() == inst.a.dim() && std::abs(norm(v) - 1.0) <= 1e-12;
                c.push_back({"vectors are unit vectors", unit, true, {}});
                break;
            }
            case InequalityId::SuperquadDefect: {
                if (need_f("f")) c.push_back(check_flag(*inst.f, FunctionFlag::Superquadratic, "superquadratic"));
                const bool shape = !inst.scalars.empty() && inst.scalars.size() % 2 == 0;
                bool nonneg = shape;
                for (double s : inst.scalars) nonneg = nonneg && s >= 0.0;
                c.push_back({"(s, t) pairs with s, t >= 0", nonneg, true, {}});
                break;
            }
        }
    } catch (const Error& e) {
        c.push_back({"hypotheses evaluable", false, true, e.what()});
    }
    return rep;
}

void classify(CheckResult& res, double tol_rel) {
    bool violated = false;
    bool inconclusive = false;
    double worst = std::numeric_limits<double>::infinity();
    const Link* tight = nullptr;
    for (const Link& l : res.links) {
        const double tol = tol_rel * (1.0 + std::abs(l.lhs) + std::abs(l.rhs));
        const double slack = l.rhs - l.lhs;
        if (!(slack >= -tol)) {
            if (l.rhs_without_infimum && *l.rhs_without_infimum - l.lhs >= -tol) {
                inconclusive = true;
            } else {
                violated = true;
            }
        }
        const double normalized = slack / (1.0 + std::abs(l.lhs) + std::abs(l.rhs));
        if (!tight || normalized < worst || std::isnan(normalized)) {
            worst = normalized;
            tight = &l;
        }
    }
    if (tight) {
        res.lhs = tight->lhs;
        res.rhs = tight->rhs;
        res.slack = tight->rhs - tight->lhs;
    }
    if (res.links.empty()) {
        res.status = Status::NotApplicable;
        if (res.reason.empty()) res.reason = "nothing to check";
    } else if (violated || std::isnan(worst)) {
        res.status = Status::Violated;
    } else if (inconclusive) {
        res.status = Status::Inconclusive;
    } else {
        res.status = Status::Holds;
    }
}

CheckResult pointwise_lemma_check(InequalityId id, const CheckInstance& inst, const std::vector<CVector>& vectors,
                                  double tol_rel) {
    CheckResult res;
    res.id = id;
    res.estimate_semantics = "checked pointwise at " + std::to_string(vectors.size()) + " vectors";
    switch (id) {
        case InequalityId::MixedSchwarz: {
            if (!inst.pair) throw Error(ErrorKind::UnsupportedParameter, "mixed Schwarz check needs a pair");
            if (vectors.size() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "mixed Schwarz takes (x, y) pairs");
            const ComplexMatrix fa = abs_fn(inst.pair->f(), gram(inst.a));
            const ComplexMatrix ga = abs_fn(inst.pair->g(), cogram(inst.a));
            for (std::size_t k = 0; k < vectors.size(); k += 2) {
                const auto& x = vectors[k];
                const auto& y = vectors[k + 1];
                if (x.size() != inst.a.dim() || y.size() != inst.a.dim()) {
                    throw Error(ErrorKind::DimensionMismatch, "vector dimension differs from A");
                }
                const double lhs = std::abs(inner(inst.a * x, y));
                const double rhs = norm(fa * x) * norm(ga * y);
                res.links.push_back(link("|<Ax,y>| <= ||f(|A|)x|| ||g(|A*|)y||", lhs, rhs));
            }
            break;
        }
        case InequalityId::MondPecaric: {
            if (!inst.f) throw Error(ErrorKind::UnsupportedParameter, "Mond-Pecaric check needs a function");
            const ScalarFunction& f = *inst.f;
            const ComplexMatrix h = checked_hermitian(inst.a);
            const ComplexMatrix fa = apply_scalar_function(f, h);
            const Interval& dom = f.domain();
            for (const auto& x : vectors) {
                if (x.size() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "vector dimension differs from A");
                double t = hermitian_form(h, x);
                if (!dom.contains(t) && dom.lo_closed && t < dom.lo) t = dom.lo;  // roundoff below a closed end
                const double ft = f(t);
                const double form = hermitian_form(fa, x);
                if (f.has(FunctionFlag::Convex)) res.links.push_back(link("f(<Ax,x>) <= <f(A)x,x>", ft, form));
                if (f.has(FunctionFlag::Concave)) res.links.push_back(link("<f(A)x,x> <= f(<Ax,x>)", form, ft));
            }
            break;
        }
        case InequalityId::DragomirVector: {
            if (vectors.size() % 3 != 0) throw Error(ErrorKind::DimensionMismatch, "vector lemma takes (z, x, y) triples");
            for (std::size_t k = 0; k < vectors.size(); k += 3) {
                const auto& z = vectors[k];
                const auto& x = vectors[k + 1];
                const auto& y = vectors[k + 2];
                if (x.size() != z.size() || y.size() != z.size()) {
                    throw Error(ErrorKind::DimensionMismatch, "vector dimensions differ");
                }
                const double lhs = std::norm(inner(z, x)) + std::norm(inner(z, y));
                const double nz = norm(z);
                const double rhs = nz * nz * std::max(std::pow(norm(x), 2), std::pow(norm(y), 2)) + std::abs(inner(x, y));
                res.links.push_back(link("|<z,x>|^2 + |<z,y>|^2 <= ||z||^2 max(||x||^2, ||y||^2) + |<x,y>|", lhs, rhs));
            }
            break;
        }
        case InequalityId::SuperquadDefect: {
            if (!inst.f) throw Error(ErrorKind::UnsupportedParameter, "defect check needs a function");
            const ScalarFunction& f = *inst.f;
            for (std::size_t k = 0; k + 1 < inst.scalars.size(); k += 2) {
                const double s = inst.scalars[k];
                const double t = inst.scalars[k + 1];
                const double cs = superquadratic_constant(f, s);
                res.links.push_back(link("f(|t-s|) + C_s(t-s) + f(s) <= f(t)", f(std::abs(t - s)) + cs * (t - s) + f(s), f(t)));
            }
            res.estimate_semantics = "checked at " + std::to_string(inst.scalars.size() / 2) + " (s, t) pairs";
            break;
        }
        default:
            throw Error(ErrorKind::UnsupportedParameter, std::string(to_string(id)) + " is not a pointwise lemma");
    }
    classify(res, tol_rel);
    return res;
}

CheckResult norm_convexity_check(const ScalarFunction& f, const ComplexMatrix& a, const ComplexMatrix& b, double v,
                                 bool mu_term, const SphereSampler& sampler, double tol_rel) {
    CheckResult res;
    res.id = mu_term ? InequalityId::RefinedConvexity : InequalityId::NormConvexity;
    const ComplexMatrix ha = checked_hermitian(a);
    const ComplexMatrix hb = checked_hermitian(b);
    const double lhs = hermitian_norm(apply_scalar_function(f, weighted_arithmetic({ha, hb, v})));
    const double base =
        hermitian_norm((1.0 - v) * apply_scalar_function(f, ha) + v * apply_scalar_function(f, hb));
    if (mu_term) {
        const SphereEstimate mu = jensen_gap_mu(f, ha, hb, sampler);
        res.links.push_back(sampled_link("||f((1-v)A + vB)|| <= ||(1-v)f(A) + v f(B)|| - min(v,1-v) mu(f)", lhs,
                                         base - weight_of(v) * mu.value, base));
        res.estimate_semantics = std::string(sampled_semantics);
        res.sphere_samples = mu.samples;
        res.witness = mu.witness;
    } else {
        res.links.push_back(link("||f((1-v)A + vB)|| <= ||(1-v)f(A) + v f(B)||", lhs, base));
        res.estimate_semantics = std::string(exact_semantics);
    }
    classify(res, tol_rel);
    return res;
}

CheckResult evaluate(InequalityId id, const CheckInstance& inst, double tol_rel) {
    CheckResult res;
    res.id = id;
    res.hypotheses = verify_hypotheses(id, inst);
    if (!res.hypotheses.satisfied()) {
        res.status = Status::NotApplicable;
        res.reason = res.hypotheses.failure();
        return res;
    }
    try {
        Evaluation e;
        switch (id) {
            case InequalityId::NormSandwich: e = eval_norm_sandwich(inst); break;
            case InequalityId::KittanehChain: e = eval_kittaneh_chain(inst); break;
            case InequalityId::PowerMix: e = eval_power_mix(inst); break;
            case InequalityId::SumSqKittaneh: e = eval_sum_sq_kittaneh(inst); break;
            case InequalityId::ProductPower: e = eval_product_power(inst); break;
            case InequalityId::GeneralProduct: e = eval_general_product(inst); break;
            case InequalityId::SumNewBound: e = eval_sum_new_bound(inst); break;
            case InequalityId::SumNewNormal: e = eval_sum_new_normal(inst); break;
            case InequalityId::WsqSum: e = eval_wsq_sum(inst); break;
            case InequalityId::ConvexProduct: e = eval_convex_product(inst); break;
            case InequalityId::ConvexProductPower: e = eval_convex_product_power(inst); break;
            case InequalityId::ScalarRefinedAmgm: e = eval_scalar_refined_amgm(inst); break;
            case InequalityId::ConditionedProduct:
            case InequalityId::ConditionedSpecials: e = eval_conditioned(inst); break;
            case InequalityId::GammaProduct: e = eval_gamma_product(inst); break;
            case InequalityId::ImprovedConvexProduct: e = eval_improved_convex_product(inst); break;
            case InequalityId::SuperquadRadius: e = eval_superquad_radius(inst); break;
            case InequalityId::SuperquadPower: e = eval_superquad_power(inst); break;
            case InequalityId::HosseiniGeo: e = eval_hosseini_geo(inst); break;
            case InequalityId::HosseiniGeoNorms: e = eval_hosseini_geo_norms(inst); break;
            case InequalityId::EuclideanSandwich: e = eval_euclidean_sandwich(inst); break;
            case InequalityId::FconnRadius: e = eval_fconn_radius(inst); break;
            case InequalityId::GeoRadius: e = eval_geo_radius(inst); break;
            case InequalityId::MixedSchwarz:
            case InequalityId::MondPecaric:
            case InequalityId::DragomirVector:
            case InequalityId::SuperquadDefect: {
                CheckResult pw_res = pointwise_lemma_check(id, inst, inst.vectors, tol_rel);
                pw_res.hypotheses = std::move(res.hypotheses);
                return pw_res;
            }
            case InequalityId::RefinedConvexity:
            case InequalityId::NormConvexity: {
                CheckResult nc = norm_convexity_check(*inst.f, inst.a, inst.b, inst.v,
                                                      id == InequalityId::RefinedConvexity, inst.sampler, tol_rel);
                nc.hypotheses = std::move(res.hypotheses);
                return nc;
            }
        }
        res.links = std::move(e.links);
        res.witness = std::move(e.witness);
        res.estimate_semantics = std::move(e.semantics);
        res.sphere_samples = e.samples;
        classify(res, tol_rel);
    } catch (const Error& err) {
        res.links.clear();
        res.status = Status::NotApplicable;
        res.reason = err.what();
    }
    return res;
}


namespace {

constexpr std::array<double, 5> v_grid{0.1, 0.25, 0.5, 0.75, 0.9};
constexpr std::array<double, 4> r_grid{1.0, 1.5, 2.0, 3.0};
constexpr std::array<std::pair<double, double>, 2> pq_grid{{{2.0, 2.0}, {3.0, 1.5}}};
constexpr std::array<double, 2> superquad_r{2.0, 3.0};

constexpr std::uint64_t tag_vectors = 0x7645ULL;
constexpr std::uint64_t tag_scalars = 0x7343ULL;
constexpr std::uint64_t tag_special = 0x7350ULL;

EnsembleKind generic_kind(const EnsembleKind& k) {
    if (std::holds_alternative<OrderedPair>(k) || std::holds_alternative<SandwichTriple>(k)) return GenericComplex{};
    return k;
}

double sandwich_gap(const EnsembleKind& k) {
    if (const auto* st = std::get_if<SandwichTriple>(&k)) return st->gap;
    return SandwichTriple{}.gap;
}

PositiveInvertible invertible_kind(const EnsembleKind& k) {
    if (const auto* pi = std::get_if<PositiveInvertible>(&k)) return *pi;
    return PositiveInvertible{};
}

// X = U diag(sigma) W*.
ComplexMatrix with_singular_values(const ComplexMatrix& u, const std::vector<double>& sigma, const ComplexMatrix& w) {
    const std::size_t n = sigma.size();
    ComplexMatrix x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * sigma[k] * std::conj(w(j, k));
            x(i, j) = acc;
        }
    return x;
}

CVector gaussian_vector(std::size_t n, CounterRng& rng, double scale) {
    CVector x(n);
    for (auto& c : x) c = scale * rng.complex_gaussian();
    return x;
}

CVector unit_vector(std::size_t n, CounterRng& rng) {
    for (;;) {
        CVector x = gaussian_vector(n, rng, 1.0);
        if (norm(x) > 0.0) return normalized(x);
    }
}

}  // namespace

CheckInstance make_instance(InequalityId id, const EnsembleSpec& ensemble, std::size_t trial, std::size_t draw,
                            const SphereSampler& sampler) {
    ensemble.validate();
    const std::uint64_t member = static_cast<std::uint64_t>(id) + 1;
    const std::uint64_t index = static_cast<std::uint64_t>(trial) * redraw_budget + draw;
    EnsembleSpec spec = ensemble;
    spec.seed = mix64(ensemble.seed ^ (member * 0x9e3779b97f4a7c15ULL));
    const std::size_t n = spec.dim;

    CheckInstance inst;
    inst.sampler = SphereSampler{mix64(spec.seed ^ sampler.seed), sampler.samples, sampler.descent_steps};

    auto draw_kind = [&](EnsembleKind kind) {
        EnsembleSpec s = spec;
        s.kind = std::move(kind);
        EnsembleSample smp = sample(s, index);
        inst.a = std::move(smp.a);
        inst.b = std::move(smp.b);
        inst.x = std::move(smp.x);
    };
    auto pick = [&](std::size_t size) { return trial % size; };

    switch (id) {
        case InequalityId::NormSandwich:
        case InequalityId::KittanehChain:
        case InequalityId::SumSqKittaneh:
        case InequalityId::SumNewBound:
        case InequalityId::WsqSum:
            draw_kind(generic_kind(ensemble.kind));
            break;
        case InequalityId::PowerMix:
        case InequalityId::GeneralProduct: {
            draw_kind(generic_kind(ensemble.kind));
            const std::size_t c = pick(r_grid.size() * v_grid.size());
            inst.r = r_grid[c % r_grid.size()];
            inst.v = v_grid[c / r_grid.size()];
            break;
        }
        case InequalityId::ProductPower:
            draw_kind(generic_kind(ensemble.kind));
            inst.r = r_grid[pick(r_grid.size())];
            break;
        case InequalityId::SumNewNormal:
            draw_kind(Normal{});
            break;
        case InequalityId::DragomirVector: {
            CounterRng rng(spec.seed, index, tag_vectors);
            const CVector x = gaussian_vector(n, rng, spec.scale);
            const CVector y = gaussian_vector(n, rng, spec.scale);
            inst.vectors = {unit_vector(n, rng), x, y};
            // The top eigenvector of xx* + yy* makes the left side as large as possible.
            ComplexMatrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = x[i] * std::conj(x[j]) + y[i] * std::conj(y[j]);
            const HermitianEigen eig = hermitian_eigen(m);
            inst.vectors.push_back(normalized(eig.vector(n - 1)));
            inst.vectors.push_back(x);
            inst.vectors.push_back(y);
            break;
        }
        case InequalityId::ConvexProduct:
        case InequalityId::ImprovedConvexProduct: {
            draw_kind(generic_kind(ensemble.kind));
            const std::size_t c = pick(r_grid.size() * v_grid.size() * v_grid.size());
            inst.r = r_grid[c % r_grid.size()];
            inst.v = v_grid[(c / r_grid.size()) % v_grid.size()];
            inst.pair = SchwarzPair::powers(v_grid[c / (r_grid.size() * v_grid.size())]);
            inst.f = ScalarFunction::power(inst.r);
            break;
        }
        case InequalityId::ConvexProductPower: {
            draw_kind(generic_kind(ensemble.kind));
            const std::size_t c = pick(r_grid.size() * v_grid.size());
            inst.r = r_grid[c % r_grid.size()];
            inst.pair = SchwarzPair::powers(v_grid[c / r_grid.size()]);
            break;
        }
        case InequalityId::ScalarRefinedAmgm: {
            CounterRng rng(spec.seed, index, tag_scalars);
            const double a = rng.uniform(0.1, 10.0) * spec.scale;
            const double b = rng.uniform(0.1, 10.0) * spec.scale;
            const double lo = std::min(a, b);
            const double hi = std::max(a, b);
            double m = rng.uniform(lo, hi);
            double M = rng.uniform(lo, hi);
            if (m > M) std::swap(m, M);
            inst.scalars = {a, b, m, M};
            break;
        }
        case InequalityId::ConditionedProduct:
        case InequalityId::GammaProduct: {
            const std::size_t c = pick(r_grid.size() * v_grid.size());
            inst.r = r_grid[c % r_grid.size()];
            inst.pair = SchwarzPair::powers(v_grid[c / r_grid.size()]);
            inst.f = ScalarFunction::power(inst.r);
            EnsembleSpec s = spec;
            s.kind = SandwichTriple{sandwich_gap(ensemble.kind)};
            EnsembleSample smp = sample_sandwich(s, index, *inst.pair, sandwich_gap(ensemble.kind));
            inst.a = std::move(smp.a);
            inst.b = std::move(smp.b);
            inst.x = std::move(smp.x);
            break;
        }
        case InequalityId::ConditionedSpecials: {
            inst.form = static_cast<int>(trial % 3);
            const std::size_t c = (trial / 3) % (r_grid.size() * v_grid.size());
            inst.r = r_grid[c % r_grid.size()];
            inst.f = ScalarFunction::power(inst.r);
            const double gap = sandwich_gap(ensemble.kind);
            CounterRng rng(spec.seed, index, tag_special);
            if (inst.form == 0) {
                inst.v = v_grid[c / r_grid.size()];
                inst.pair = SchwarzPair::powers(1.0 - inst.v);
                EnsembleSpec s = spec;
                s.kind = SandwichTriple{gap};
                EnsembleSample smp = sample_sandwich(s, index, *inst.pair, gap);
                inst.a = std::move(smp.a);
                inst.b = std::move(smp.b);
                inst.x = std::move(smp.x);
            } else if (inst.form == 1) {
                // A = B = I; the gap comes from the singular values of X alone.
                constexpr std::array<double, 4> vs{0.1, 0.25, 0.75, 0.9};
                inst.v = vs[c % vs.size()];
                inst.pair = SchwarzPair::powers(1.0 - inst.v);
                inst.a = ComplexMatrix::identity(n);
                inst.b = ComplexMatrix::identity(n);
                std::vector<double> sigma(n);
                for (auto& s : sigma) s = rng.uniform(2.0, 4.0);
                const ComplexMatrix u = random_unitary(n, rng);
                const ComplexMatrix w = random_unitary(n, rng);
                inst.x = with_singular_values(u, sigma, w);
            } else {
                // X = I, f = g = sqrt: S = B*B and T = A*A.
                inst.pair = SchwarzPair::powers(0.5);
                inst.x = ComplexMatrix::identity(n);
                std::vector<double> lower(n);
                std::vector<double> upper(n);
                for (auto& l : lower) l = std::sqrt(rng.uniform(0.5, 1.0) * spec.scale);
                for (auto& h : upper) h = std::sqrt(rng.uniform(1.0 + gap, 2.0 + gap) * spec.scale);
                const bool s_lower = rng.uniform() < 0.5;
                const ComplexMatrix q1 = random_unitary(n, rng);
                const ComplexMatrix q2 = random_unitary(n, rng);
                const ComplexMatrix rs = unitary_similarity(random_unitary(n, rng), s_lower ? lower : upper);
                const ComplexMatrix rt = unitary_similarity(random_unitary(n, rng), s_lower ? upper : lower);
                inst.b = q1 * rs;
                inst.a = q2 * rt;
            }
            break;
        }
        case InequalityId::RefinedConvexity:
        case InequalityId::NormConvexity: {
            draw_kind(Positive{});
            const std::size_t c = pick(r_grid.size() * v_grid.size());
            inst.r = r_grid[c % r_grid.size()];
            inst.v = v_grid[c / r_grid.size()];
            inst.f = ScalarFunction::power(inst.r);
            break;
        }
        case InequalityId::SuperquadRadius:
        case InequalityId::SuperquadPower:
            draw_kind(generic_kind(ensemble.kind));
            inst.r = superquad_r[pick(superquad_r.size())];
            inst.f = ScalarFunction::power(inst.r);
            break;
        case InequalityId::HosseiniGeo:
        case InequalityId::HosseiniGeoNorms: {
            draw_kind(invertible_kind(ensemble.kind));
            std::vector<std::tuple<double, double, double>> combos;
            for (const auto& [p, q] : pq_grid)
                for (double r : r_grid)
                    if (r >= 2.0 / q) combos.emplace_back(r, p, q);
            std::tie(inst.r, inst.p, inst.q) = combos[pick(combos.size())];
            break;
        }
        case InequalityId::EuclideanSandwich:
            draw_kind(invertible_kind(ensemble.kind));
            break;
        case InequalityId::FconnRadius:
        case InequalityId::GeoRadius: {
            draw_kind(invertible_kind(ensemble.kind));
            EnsembleSpec s = spec;
            s.kind = Positive{};
            inst.b = sample(s, index).b;
            if (id == InequalityId::FconnRadius) {
                const std::size_t c = pick(2 * v_grid.size());
                inst.v = v_grid[c / 2];
                inst.f = c % 2 == 0 ? ScalarFunction::power(inst.v)
                                    : ScalarFunction::affine_power(inst.v, 1.0 - inst.v, 1.0);
            }
            break;
        }
        case InequalityId::MixedSchwarz: {
            draw_kind(generic_kind(ensemble.kind));
            inst.v = v_grid[pick(v_grid.size())];
            inst.pair = SchwarzPair::powers(inst.v);
            CounterRng rng(spec.seed, index, tag_vectors);
            for (int k = 0; k < 8; ++k) inst.vectors.push_back(unit_vector(n, rng));
            // Top right singular vector x with y = Ax/||Ax|| attains equality.
            const HermitianEigen eig = hermitian_eigen(gram(inst.a));
            const CVector x = normalized(eig.vector(n - 1));
            const CVector ax = inst.a * x;
            inst.vectors.push_back(x);
            inst.vectors.push_back(norm(ax) > 0.0 ? normalized(ax) : x);
            break;
        }
        case InequalityId::MondPecaric: {
            draw_kind(Positive{});
            const std::size_t c = pick(r_grid.size() + v_grid.size());
            if (c < r_grid.size()) {
                inst.r = r_grid[c];
                inst.f = ScalarFunction::power(inst.r);
            } else {
                inst.v = v_grid[c - r_grid.size()];
                inst.f = ScalarFunction::power(inst.v);
            }
            CounterRng rng(spec.seed, index, tag_vectors);
            for (int k = 0; k < 8; ++k) inst.vectors.push_back(unit_vector(n, rng));
            break;
        }
        case InequalityId::SuperquadDefect: {
            inst.r = superquad_r[pick(superquad_r.size())];
            inst.f = ScalarFunction::power(inst.r);
            CounterRng rng(spec.seed, index, tag_scalars);
            for (int k = 0; k < 16; ++k) inst.scalars.push_back(rng.uniform(0.0, 10.0));
            inst.scalars.push_back(3.0);  // s = t
            inst.scalars.push_back(3.0);
            break;
        }
    }
    return inst;
}

}  // namespace nrlab
