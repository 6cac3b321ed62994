#include "nrlab/function.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"
#include "nrlab/numrad.hpp"

namespace nrlab {

namespace {

constexpr std::uint8_t bit(FunctionFlag f) { return static_cast<std::uint8_t>(f); }

std::string format_number(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), end);
}

double parse_number(std::string_view text, std::string_view whole) {
    double value = 0.0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw Error(ErrorKind::UnsupportedParameter,
                    "bad number '" + std::string(text) + "' in function name '" + std::string(whole) + "'");
    }
    return value;
}

// Integer and half-integer exponents are evaluated exactly where possible so
// that e.g. t^2 and t^{1/2} agree with hand arithmetic.
double power_of(double t, double e) noexcept {
    if (e == 0.0) return 1.0;
    if (e == 1.0) return t;
    if (e == 2.0) return t * t;
    if (e == 3.0) return t * t * t;
    if (e == 0.5) return std::sqrt(t);
    if (e == -1.0) return 1.0 / t;
    return std::pow(t, e);
}

}  // namespace

ScalarFunction ScalarFunction::power(double r) {
    if (!std::isfinite(r)) throw Error(ErrorKind::UnsupportedParameter, "non-finite exponent");
    Interval dom{0.0, std::numeric_limits<double>::infinity(), r >= 0.0, false};
    std::uint8_t flags = bit(FunctionFlag::NonNegative);
    if (r > 0.0) flags |= bit(FunctionFlag::Increasing);
    if (r >= 1.0 || r < 0.0 || r == 0.0) flags |= bit(FunctionFlag::Convex);
    if (r > 0.0 && r <= 1.0) flags |= bit(FunctionFlag::Concave);
    if (r >= 2.0) flags |= bit(FunctionFlag::Superquadratic);
    return ScalarFunction(Power{r}, dom, flags);
}

ScalarFunction ScalarFunction::affine_power(double scale, double shift, double e) {
    if (!std::isfinite(scale) || !std::isfinite(shift) || !std::isfinite(e)) {
        throw Error(ErrorKind::UnsupportedParameter, "non-finite affine-power parameter");
    }
    const bool open_at_zero_base = e < 0.0;
    Interval dom;
    if (scale > 0.0) {
        const double root = -shift / scale;
        if (root > 0.0) {
            dom = {root, std::numeric_limits<double>::infinity(), !open_at_zero_base, false};
        } else {
            dom = {0.0, std::numeric_limits<double>::infinity(), !(open_at_zero_base && root == 0.0), false};
        }
    } else if (scale < 0.0) {
        const double root = -shift / scale;
        if (root < 0.0 || (root == 0.0 && open_at_zero_base)) {
            throw Error(ErrorKind::UnsupportedParameter, "affine power has an empty domain");
        }
        dom = {0.0, root, true, !open_at_zero_base};
    } else {
        if (shift < 0.0 || (shift == 0.0 && open_at_zero_base)) {
            throw Error(ErrorKind::UnsupportedParameter, "affine power has an empty domain");
        }
        dom = {0.0, std::numeric_limits<double>::infinity(), true, false};
    }
    std::uint8_t flags = bit(FunctionFlag::NonNegative);
    if (scale * e > 0.0) flags |= bit(FunctionFlag::Increasing);
    if (e >= 1.0 || e <= 0.0 || scale == 0.0) flags |= bit(FunctionFlag::Convex);
    if ((e >= 0.0 && e <= 1.0) || scale == 0.0) flags |= bit(FunctionFlag::Concave);
    if (shift == 0.0 && scale > 0.0 && e >= 2.0) flags |= bit(FunctionFlag::Superquadratic);
    return ScalarFunction(AffinePower{scale, shift, e}, dom, flags);
}

ScalarFunction ScalarFunction::deformed_exp(double r) {
    if (r == 0.0 || !std::isfinite(r)) {
        throw Error(ErrorKind::UnsupportedParameter, "deformed exponential needs r != 0");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const Interval dom = r > 0.0 ? Interval{-1.0 / r, inf, false, false}
                                 : Interval{-inf, -1.0 / r, false, false};
    std::uint8_t flags = bit(FunctionFlag::NonNegative) | bit(FunctionFlag::Increasing);
    if (r <= 1.0) flags |= bit(FunctionFlag::Convex);
    if (r >= 1.0) flags |= bit(FunctionFlag::Concave);
    return ScalarFunction(DeformedExp{r}, dom, flags);
}

ScalarFunction ScalarFunction::parse(std::string_view name) {
    const auto colon = name.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorKind::UnsupportedParameter, "unknown function '" + std::string(name) + "'");
    }
    const auto head = name.substr(0, colon);
    const auto rest = name.substr(colon + 1);
    if (head == "pow") return power(parse_number(rest, name));
    if (head == "expr") return deformed_exp(parse_number(rest, name));
    if (head == "aff") {
        const auto c1 = rest.find(':');
        const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
        if (c2 == std::string_view::npos) {
            throw Error(ErrorKind::UnsupportedParameter,
                        "expected aff:<scale>:<shift>:<exponent>, got '" + std::string(name) + "'");
        }
        return affine_power(parse_number(rest.substr(0, c1), name),
                            parse_number(rest.substr(c1 + 1, c2 - c1 - 1), name),
                            parse_number(rest.substr(c2 + 1), name));
    }
    throw Error(ErrorKind::UnsupportedParameter, "unknown function '" + std::string(name) + "'");
}

std::string ScalarFunction::name() const {
    return std::visit(
        [](const auto& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Power>) {
                return "pow:" + format_number(k.exponent);
            } else if constexpr (std::is_same_v<K, AffinePower>) {
                return "aff:" + format_number(k.scale) + ":" + format_number(k.shift) + ":" +
                       format_number(k.exponent);
            } else {
                return "expr:" + format_number(k.r);
            }
        },
        kind_);
}

double ScalarFunction::evaluate(double t) const noexcept {
    return std::visit(
        [t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Power>) {
                return power_of(t, k.exponent);
            } else if constexpr (std::is_same_v<K, AffinePower>) {
                return power_of(std::max(k.scale * t + k.shift, 0.0), k.exponent);
            } else {
                return std::exp(std::log1p(k.r * t) / k.r);
            }
        },
        kind_);
}

double ScalarFunction::operator()(double t) const {
    if (!domain_.contains(t)) {
        throw Error(ErrorKind::DomainViolation, name() + " is undefined at " + format_number(t));
    }
    return evaluate(t);
}

double ScalarFunction::derivative(double t) const {
    if (!domain_.contains(t)) {
        throw Error(ErrorKind::DomainViolation, name() + " is undefined at " + format_number(t));
    }
    return std::visit(
        [t](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Power>) {
                if (k.exponent == 0.0) return 0.0;
                if (k.exponent == 1.0) return 1.0;
                return k.exponent * power_of(t, k.exponent - 1.0);
            } else if constexpr (std::is_same_v<K, AffinePower>) {
                if (k.exponent == 0.0) return 0.0;
                const double base = k.scale * t + k.shift;
                if (k.exponent == 1.0) return k.scale;
                return k.exponent * k.scale * power_of(base, k.exponent - 1.0);
            } else {
                return std::exp(std::log1p(k.r * t) * (1.0 / k.r - 1.0));
            }
        },
        kind_);
}

double eval(const ScalarFunction& f, double t) { return f(t); }

SchwarzPair::SchwarzPair(ScalarFunction f, ScalarFunction g) : f_(std::move(f)), g_(std::move(g)) {
    for (const auto* fn : {&f_, &g_}) {
        if (!fn->domain().contains(0.0) || !std::isinf(fn->domain().hi) ||
            !fn->has(FunctionFlag::NonNegative)) {
            throw Error(ErrorKind::UnsupportedParameter,
                        fn->name() + " is not a nonnegative function on [0, inf)");
        }
    }
    for (int k = 0; k < grid_points; ++k) {
        const double t = grid_max * k / (grid_points - 1);
        const double product = f_(t) * g_(t);
        if (!(std::abs(product - t) <= 1e-12 * (1.0 + t))) {
            throw Error(ErrorKind::UnsupportedParameter,
                        name() + " violates f(t)g(t) = t at t = " + format_number(t));
        }
    }
}

SchwarzPair SchwarzPair::parse(std::string_view name) {
    const auto bar = name.find('|');
    if (bar == std::string_view::npos) {
        throw Error(ErrorKind::UnsupportedParameter,
                    "expected a pair '<f>|<g>', got '" + std::string(name) + "'");
    }
    return SchwarzPair(ScalarFunction::parse(name.substr(0, bar)),
                       ScalarFunction::parse(name.substr(bar + 1)));
}

SchwarzPair SchwarzPair::powers(double a) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw Error(ErrorKind::UnsupportedParameter, "Schwarz power split must lie in [0, 1]");
    }
    return SchwarzPair(ScalarFunction::power(a), ScalarFunction::power(1.0 - a));
}

double superquadratic_constant(const ScalarFunction& f, double s) {
    if (!f.has(FunctionFlag::Superquadratic)) {
        throw Error(ErrorKind::NotSuperquadratic, f.name() + " is not flagged superquadratic");
    }
    return f.derivative(s);
}

double superquadratic_defect(const ScalarFunction& f, double s, double t) {
    const double cs = superquadratic_constant(f, s);
    if (s < 0.0 || t < 0.0) {
        throw Error(ErrorKind::DomainViolation, "superquadratic defect needs s, t >= 0");
    }
    return f(t) - f(std::abs(t - s)) - cs * (t - s) - f(s);
}

double jensen_gap(const ScalarFunction& f, const ComplexMatrix& a, const ComplexMatrix& b,
                  std::span<const Complex> x) {
    const double qa = hermitian_form(a, x);
    const double qb = hermitian_form(b, x);
    // Tiny negative forms of PSD operands are roundoff; pin them to the domain.
    auto at = [&](double q) {
        const auto& dom = f.domain();
        if (!dom.contains(q) && dom.lo_closed && q < dom.lo && q > dom.lo - 1e-12 * (1.0 + std::abs(q))) {
            q = dom.lo;
        }
        return f(q);
    };
    return at(qa) + at(qb) - 2.0 * at(0.5 * (qa + qb));
}

SphereEstimate jensen_gap_mu(const ScalarFunction& f, const ComplexMatrix& a, const ComplexMatrix& b,
                             const SphereSampler& sampler) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "jensen gap operands differ in dimension");
    }
    if (!f.has(FunctionFlag::Convex)) {
        throw Error(ErrorKind::UnsupportedParameter, f.name() + " is not flagged convex");
    }
    const ComplexMatrix ha = checked_hermitian(a);
    const ComplexMatrix hb = checked_hermitian(b);
    // Domain check on the spectra up front; the sampled forms stay inside their hull.
    for (const auto* m : {&ha, &hb}) {
        const auto ev = hermitian_eigenvalues(*m);
        const double slack = tolerance::herm * std::max(std::abs(ev.front()), std::abs(ev.back()));
        const auto& dom = f.domain();
        const bool lo_ok = dom.contains(ev.front()) || (dom.lo_closed && ev.front() >= dom.lo - slack);
        const bool hi_ok = dom.contains(ev.back()) || (dom.hi_closed && ev.back() <= dom.hi + slack);
        if (!lo_ok || !hi_ok) {
            throw Error(ErrorKind::DomainViolation, "spectrum outside the domain of " + f.name());
        }
    }
    return sphere_inf([&](std::span<const Complex> x) { return jensen_gap(f, ha, hb, x); }, a.dim(),
                      sampler);
}

}  // namespace nrlab
