#include "nrlab/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "nrlab/error.hpp"

namespace nrlab {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "operands have dimensions " + std::to_string(a.dim()) + " and " +
                        std::to_string(b.dim()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : n_(rows.size()), data_() {
    data_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (r.size() != n_) {
            throw Error(ErrorKind::InvalidMatrix, "matrix literal is not square");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) {
        throw Error(ErrorKind::InvalidMatrix, "matrix literal has a non-finite entry");
    }
}

ComplexMatrix ComplexMatrix::from_row_major(std::size_t n, std::vector<Complex> entries) {
    if (n == 0 || entries.size() != n * n) {
        throw Error(ErrorKind::InvalidMatrix, "expected " + std::to_string(n * n) + " entries");
    }
    ComplexMatrix m;
    m.n_ = n;
    m.data_ = std::move(entries);
    if (!m.all_finite()) {
        throw Error(ErrorKind::InvalidMatrix, "matrix has a non-finite entry");
    }
    return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs, rhs);
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto out_row = out.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            auto r = rhs.row(k);
            for (std::size_t j = 0; j < n; ++j) out_row[j] += a * r[j];
        }
    }
    return out;
}

CVector operator*(const ComplexMatrix& m, std::span<const Complex> x) {
    if (x.size() != m.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "vector length does not match matrix");
    }
    CVector y(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Complex acc{};
        auto r = m.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
            out(i, j) = z;
            out(j, i) = std::conj(z);
        }
    }
    return out;
}

ComplexMatrix gram(const ComplexMatrix& a) { return hermitian_part(adjoint(a) * a); }

ComplexMatrix cogram(const ComplexMatrix& a) { return hermitian_part(a * adjoint(a)); }

ComplexMatrix congruence(const ComplexMatrix& c, const ComplexMatrix& m) {
    return hermitian_part(adjoint(c) * m * c);
}

double frobenius_norm(const ComplexMatrix& a) noexcept {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs_entry(const ComplexMatrix& a) noexcept {
    double m = 0.0;
    for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

Complex trace(const ComplexMatrix& a) noexcept {
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) noexcept {
    Complex acc{};
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * std::conj(y[i]);
    return acc;
}

double norm(std::span<const Complex> x) noexcept {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

CVector normalized(std::span<const Complex> x) {
    const double nx = norm(x);
    if (!(nx > 0.0)) {
        throw Error(ErrorKind::DomainViolation, "cannot normalize a zero vector");
    }
    CVector out(x.begin(), x.end());
    for (auto& z : out) z /= nx;
    return out;
}

Complex quadratic_form(const ComplexMatrix& a, std::span<const Complex> x) noexcept {
    const std::size_t n = a.dim();
    Complex acc{};
    for (std::size_t i = 0; i < n; ++i) {
        auto r = a.row(i);
        Complex ri{};
        for (std::size_t j = 0; j < n; ++j) ri += r[j] * x[j];
        acc += ri * std::conj(x[i]);
    }
    return acc;
}

double hermitian_form(const ComplexMatrix& a, std::span<const Complex> x) noexcept {
    // Uses the upper triangle only: sum_i a_ii |x_i|^2 + 2 Re sum_{i<j} conj(x_i) a_ij x_j.
    const std::size_t n = a.dim();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto r = a.row(i);
        acc += r[i].real() * std::norm(x[i]);
        Complex off{};
        for (std::size_t j = i + 1; j < n; ++j) off += r[j] * x[j];
        acc += 2.0 * (std::conj(x[i]) * off).real();
    }
    return acc;
}

}  // namespace nrlab
