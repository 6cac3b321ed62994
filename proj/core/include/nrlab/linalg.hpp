#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nrlab/matrix.hpp"

namespace nrlab {

class ScalarFunction;

namespace tolerance {
/// Relative Hermiticity tolerance: ||H - H*|| <= herm * ||H|| (Frobenius norms).
inline constexpr double herm = 1e-10;
/// Relative invertibility cutoff: lambda_min > inv * ||H||.
inline constexpr double inv = 1e-10;
/// Default eigen-residual tolerance is res_per_dim * n.
inline constexpr double res_per_dim = 1e-11;
/// Maximum number of cyclic Jacobi sweeps.
inline constexpr int jacobi_sweeps = 100;
}  // namespace tolerance

/// Eigen-decomposition H = V diag(eigenvalues) V*, eigenvalues ascending.
struct HermitianEigen {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;  ///< columns are eigenvectors

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
    /// Column `k` of `vectors`.
    CVector vector(std::size_t k) const;
};

bool is_hermitian(const ComplexMatrix& h, double rel_tol = tolerance::herm) noexcept;

/// Returns (H + H*)/2, or throws NotHermitian when H is not Hermitian within
/// the relative tolerance.
ComplexMatrix checked_hermitian(const ComplexMatrix& h, double rel_tol = tolerance::herm);

/// Cyclic Jacobi diagonalization. `eps_res <= 0` selects the default 1e-11 * n.
/// Throws NotHermitian, or NoConvergence when the off-diagonal mass stays above
/// eps_res * (1 + ||H||) after the sweep budget.
HermitianEigen hermitian_eigen(const ComplexMatrix& h, double eps_res = 0.0);

/// Eigenvalues only (Householder tridiagonalization + implicit QL), ascending.
/// Cheaper than hermitian_eigen; used by the angle sweep.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

namespace detail {
/// Eigenvalues of a matrix already known to be exactly Hermitian; skips the
/// tolerance check and symmetrization.
std::vector<double> eigenvalues_unchecked(ComplexMatrix h);

struct EigenWorkspace {
    std::vector<Complex> h;
    std::vector<double> d;
    std::vector<double> e;
    CVector v;
    CVector p;
};

/// (lambda_min, lambda_max) of an exactly Hermitian row-major n x n buffer;
/// only the lower triangle is read. Reuses `ws` across calls.
std::pair<double, double> extreme_eigenvalues(std::span<const Complex> h, std::size_t n, EigenWorkspace& ws);
}  // namespace detail

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// |A| = (A*A)^{1/2}.
ComplexMatrix abs_operator(const ComplexMatrix& a);

/// V diag(f(lambda)) V*. Eigenvalues within herm * ||H|| of a closed domain
/// endpoint are clamped onto it; an open endpoint needs a margin of
/// inv * ||H||. Throws DomainViolation otherwise.
ComplexMatrix apply_scalar_function(const ScalarFunction& f, const ComplexMatrix& h);
ComplexMatrix apply_scalar_function(const ScalarFunction& f, const HermitianEigen& eig);

/// V diag(fn(lambda)) V* for an arbitrary real map; no domain checks.
template <typename Fn>
ComplexMatrix apply_spectral(const HermitianEigen& eig, Fn&& fn) {
    const std::size_t n = eig.eigenvalues.size();
    std::vector<double> mapped(n);
    for (std::size_t k = 0; k < n; ++k) mapped[k] = fn(eig.eigenvalues[k]);
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) {
                acc += eig.vectors(i, k) * mapped[k] * std::conj(eig.vectors(j, k));
            }
            out(i, j) = acc;
            out(j, i) = std::conj(acc);
        }
        out(i, i) = out(i, i).real();
    }
    return out;
}

/// P^e for a positive semidefinite P (negative exponents need P invertible).
ComplexMatrix psd_power(const ComplexMatrix& p, double exponent);

double lambda_min(const ComplexMatrix& h);
double lambda_max(const ComplexMatrix& h);

/// max |lambda| of a Hermitian matrix; equals its operator norm.
double hermitian_norm(const ComplexMatrix& h);

/// A <= B in the Loewner order: lambda_min(B - A) >= -tol * (1 + ||A|| + ||B||).
bool loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-10);

}  // namespace nrlab
