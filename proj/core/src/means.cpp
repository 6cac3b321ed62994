#include "nrlab/means.hpp"

#include <cmath>
#include <string>

#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"

namespace nrlab {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "operands have dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
}

void require_weight(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorKind::UnsupportedParameter, "mean weight must lie in [0, 1]");
}

// A^{1/2}, A^{-1/2} for a positive invertible A.
struct RootPair {
    ComplexMatrix root;
    ComplexMatrix inv_root;
};

RootPair roots_of_positive(const ComplexMatrix& a) {
    const HermitianEigen eig = hermitian_eigen(a);
    const double scale = std::max(std::abs(eig.min()), std::abs(eig.max()));
    if (!(eig.min() > tolerance::inv * scale) || scale == 0.0) {
        throw Error(ErrorKind::NotInvertible,
                    "lambda_min = " + std::to_string(eig.min()) + " is below the invertibility cutoff");
    }
    return {apply_spectral(eig, [](double t) { return std::sqrt(t); }),
            apply_spectral(eig, [](double t) { return 1.0 / std::sqrt(t); })};
}

void require_psd(const ComplexMatrix& b) {
    const auto ev = hermitian_eigenvalues(b);
    const double scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
    if (ev.front() < -tolerance::herm * (1.0 + scale)) {
        throw Error(ErrorKind::NotPositive, "lambda_min = " + std::to_string(ev.front()) + " < 0");
    }
}

}  // namespace

ComplexMatrix weighted_arithmetic(const MeanOperands& ops) {
    require_same_dim(ops.a, ops.b);
    require_weight(ops.v);
    return (1.0 - ops.v) * ops.a + ops.v * ops.b;
}

ComplexMatrix weighted_geometric(const MeanOperands& ops) {
    require_same_dim(ops.a, ops.b);
    require_weight(ops.v);
    require_psd(ops.b);
    return f_connection(ops.a, ops.b, ScalarFunction::power(ops.v));
}

ComplexMatrix f_connection(const ComplexMatrix& a, const ComplexMatrix& b, const ScalarFunction& f) {
    require_same_dim(a, b);
    const RootPair r = roots_of_positive(a);
    const ComplexMatrix inner = congruence(r.inv_root, checked_hermitian(b));
    return congruence(r.root, apply_scalar_function(f, inner));
}

ComplexMatrix f_connection_square(const ComplexMatrix& a, const ComplexMatrix& b, const ScalarFunction& f) {
    require_same_dim(a, b);
    const RootPair r = roots_of_positive(a);
    const ComplexMatrix inner = congruence(r.inv_root, checked_hermitian(b));
    const ComplexMatrix fc = apply_scalar_function(f, inner);
    return congruence(r.root, gram(fc));
}

double deformed_exp(double r, double x) { return ScalarFunction::deformed_exp(r)(x); }

double gamma_factor(double m_lo, double M_hi) {
    if (!(m_lo > 0.0 && m_lo <= M_hi) || !std::isfinite(M_hi)) {
        throw Error(ErrorKind::InvalidBounds, "gamma factor needs 0 < m' <= M'");
    }
    const double h = M_hi / m_lo;
    const double d = 1.0 - 1.0 / h;
    return 1.0 / (1.0 - d * d / 8.0);
}

double refined_amgm_factor(double m, double M) {
    if (!(m > 0.0 && m < M) || !std::isfinite(M)) {
        throw Error(ErrorKind::InvalidBounds, "refined AM-GM factor needs 0 < m < M");
    }
    return (M + m) / (2.0 * std::sqrt(M * m));
}

}  // namespace nrlab
