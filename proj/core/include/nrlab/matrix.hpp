#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nrlab {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense square complex matrix stored row-major.
///
/// A default-constructed matrix has dimension zero and is only useful as a
/// placeholder; every public operation of the library expects dim() >= 1.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    /// Row-wise literal, e.g. {{1, 0}, {-3, 1}}. Throws InvalidMatrix when the
    /// rows are ragged or an entry is not finite.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    /// Throws InvalidMatrix unless `entries` holds n*n finite values.
    static ComplexMatrix from_row_major(std::size_t n, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);

    std::size_t dim() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    std::span<Complex> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const Complex> row(std::size_t i) const noexcept { return {data_.data() + i * n_, n_}; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }

    bool all_finite() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s) noexcept;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);
ComplexMatrix operator-(ComplexMatrix m);

CVector operator*(const ComplexMatrix& m, std::span<const Complex> x);

/// Conjugate transpose A*.
ComplexMatrix adjoint(const ComplexMatrix& a);

/// (A + A*) / 2, used to absorb roundoff before spectral work.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Products that are Hermitian in exact arithmetic: A*·A and A·A*.
ComplexMatrix gram(const ComplexMatrix& a);
ComplexMatrix cogram(const ComplexMatrix& a);

/// C*·M·C, symmetrized.
ComplexMatrix congruence(const ComplexMatrix& c, const ComplexMatrix& m);

double frobenius_norm(const ComplexMatrix& a) noexcept;
double max_abs_entry(const ComplexMatrix& a) noexcept;
Complex trace(const ComplexMatrix& a) noexcept;

/// Inner product <x, y> = sum_i x_i conj(y_i), linear in the first slot.
Complex inner(std::span<const Complex> x, std::span<const Complex> y) noexcept;
double norm(std::span<const Complex> x) noexcept;
CVector normalized(std::span<const Complex> x);

/// <A x, x>.
Complex quadratic_form(const ComplexMatrix& a, std::span<const Complex> x) noexcept;
/// <A x, x> for Hermitian A, imaginary roundoff discarded.
double hermitian_form(const ComplexMatrix& a, std::span<const Complex> x) noexcept;

}  // namespace nrlab
