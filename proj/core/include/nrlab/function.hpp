#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

#include "nrlab/matrix.hpp"
#include "nrlab/sampler.hpp"

namespace nrlab {

enum class FunctionFlag : std::uint8_t {
    NonNegative = 1u << 0,
    Increasing = 1u << 1,
    Convex = 1u << 2,
    Concave = 1u << 3,
    Superquadratic = 1u << 4,
};

struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    bool lo_closed = true;
    bool hi_closed = false;

    bool contains(double t) const noexcept {
        const bool above = lo_closed ? t >= lo : t > lo;
        const bool below = hi_closed ? t <= hi : t < hi;
        return above && below;
    }
};

/// A real function from the fixed catalog, tagged with the properties the
/// certification layer relies on.
///
/// Catalog names: "pow:<r>" is t^r on [0, inf) (open at 0 for r < 0);
/// "aff:<scale>:<shift>:<e>" is (scale*t + shift)^e; "expr:<r>" is the
/// deformed exponential (1 + r x)^{1/r}, defined where 1 + r x > 0.
class ScalarFunction {
public:
    struct Power {
        double exponent;
    };
    struct AffinePower {
        double scale;
        double shift;
        double exponent;
    };
    struct DeformedExp {
        double r;
    };
    using Kind = std::variant<Power, AffinePower, DeformedExp>;

    static ScalarFunction power(double exponent);
    static ScalarFunction affine_power(double scale, double shift, double exponent);
    /// Throws UnsupportedParameter for r == 0.
    static ScalarFunction deformed_exp(double r);
    /// Throws UnsupportedParameter for an unknown or malformed name.
    static ScalarFunction parse(std::string_view name);

    const Kind& kind() const noexcept { return kind_; }
    const Interval& domain() const noexcept { return domain_; }
    bool has(FunctionFlag flag) const noexcept {
        return (flags_ & static_cast<std::uint8_t>(flag)) != 0;
    }
    std::uint8_t flags() const noexcept { return flags_; }
    std::string name() const;

    /// Throws DomainViolation outside the domain.
    double operator()(double t) const;
    /// First derivative; used for the superquadratic constant C_s.
    double derivative(double t) const;

    friend bool operator==(const ScalarFunction& a, const ScalarFunction& b) {
        return a.name() == b.name();
    }

private:
    ScalarFunction(Kind kind, Interval domain, std::uint8_t flags)
        : kind_(kind), domain_(domain), flags_(flags) {}

    double evaluate(double t) const noexcept;

    Kind kind_;
    Interval domain_;
    std::uint8_t flags_;
};

double eval(const ScalarFunction& f, double t);

/// Functions f, g >= 0 on [0, inf) with f(t) g(t) = t.
class SchwarzPair {
public:
    /// Validates f g = t on a 1000-point grid over [0, 100] to
    /// 1e-12 * (1 + t); throws UnsupportedParameter otherwise.
    SchwarzPair(ScalarFunction f, ScalarFunction g);

    /// "pow:<v>|pow:<1-v>" style name.
    static SchwarzPair parse(std::string_view name);
    /// t^a paired with t^(1-a), 0 <= a <= 1.
    static SchwarzPair powers(double a);

    const ScalarFunction& f() const noexcept { return f_; }
    const ScalarFunction& g() const noexcept { return g_; }
    std::string name() const { return f_.name() + "|" + g_.name(); }

    static constexpr double grid_max = 100.0;
    static constexpr int grid_points = 1000;

private:
    ScalarFunction f_;
    ScalarFunction g_;
};

/// C_s for a superquadratic catalog function: its derivative at s.
double superquadratic_constant(const ScalarFunction& f, double s);

/// f(t) - f(|t - s|) - C_s (t - s) - f(s); nonnegative for superquadratic f.
/// Throws NotSuperquadratic when the flag is absent.
double superquadratic_defect(const ScalarFunction& f, double s, double t);

/// Pointwise Jensen gap f(<Ax,x>) + f(<Bx,x>) - 2 f(<(A+B)/2 x, x>) at unit x.
double jensen_gap(const ScalarFunction& f, const ComplexMatrix& a, const ComplexMatrix& b,
                  std::span<const Complex> x);

/// Upper estimate of mu(f) = inf over unit x of the Jensen gap: the sampled
/// minimum followed by compass descent. Requires Convex f and Hermitian A, B.
SphereEstimate jensen_gap_mu(const ScalarFunction& f, const ComplexMatrix& a,
                             const ComplexMatrix& b, const SphereSampler& sampler);

}  // namespace nrlab
