#pragma once

#include "nrlab/function.hpp"
#include "nrlab/matrix.hpp"

namespace nrlab {

/// Operands of a two-variable operator mean. `v` is the weight on B.
struct MeanOperands {
    ComplexMatrix a;
    ComplexMatrix b;
    double v = 0.5;
};

/// (1 - v) A + v B.
ComplexMatrix weighted_arithmetic(const MeanOperands& ops);

/// A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}. A must be positive invertible and
/// B positive semidefinite; throws NotInvertible / NotPositive otherwise.
ComplexMatrix weighted_geometric(const MeanOperands& ops);

/// A sigma_f B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}.
ComplexMatrix f_connection(const ComplexMatrix& a, const ComplexMatrix& b, const ScalarFunction& f);

/// A^{1/2} f^2(A^{-1/2} B A^{-1/2}) A^{1/2}; the middle factor of the f-connection bound.
ComplexMatrix f_connection_square(const ComplexMatrix& a, const ComplexMatrix& b, const ScalarFunction& f);

/// (1 + r x)^{1/r}. Throws UnsupportedParameter for r == 0 and
/// DomainViolation when 1 + r x <= 0.
double deformed_exp(double r, double x);

/// gamma = (1 - (1 - 1/h')^2 / 8)^{-1} with h' = M_hi / m_lo.
double gamma_factor(double m_lo, double M_hi);

/// (M + m) / (2 sqrt(M m)) for 0 < m < M.
double refined_amgm_factor(double m, double M);

}  // namespace nrlab
