#include "nrlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nrlab/error.hpp"
#include "nrlab/function.hpp"

namespace nrlab {

namespace {

double off_diagonal_norm(const ComplexMatrix& h) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < h.dim(); ++i)
        for (std::size_t j = 0; j < h.dim(); ++j)
            if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
}

// Implicit QL with Wilkinson-style shifts on a real symmetric tridiagonal
// matrix; d holds the diagonal, e[i] couples i and i+1 (e[n-1] unused).
void tridiagonal_ql(double* d, double* e, int n) {
    if (n == 0) return;
    e[n - 1] = 0.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) {
                    throw Error(ErrorKind::NoConvergence, "tridiagonal QL did not converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::sqrt(g * g + 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::sqrt(f * f + g * g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form (off-diagonal moduli; a diagonal unitary scaling removes the phases).
// Works on the lower triangle of the row-major buffer `h` in place.
void tridiagonalize(Complex* h, std::size_t n, double* d, double* e, Complex* v, Complex* p) {
    auto at = [h, n](std::size_t i, std::size_t j) -> Complex& { return h[i * n + j]; };
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(at(i, k));
        if (tail == 0.0) continue;
        const Complex x0 = at(k + 1, k);
        const double xnorm = std::sqrt(tail + std::norm(x0));
        const double ax0 = std::sqrt(std::norm(x0));
        const Complex phase = ax0 > 0.0 ? x0 * (1.0 / ax0) : Complex{1.0, 0.0};
        const Complex alpha = -phase * xnorm;

        const std::size_t m = n - k - 1;
        const std::size_t o = k + 1;
        for (std::size_t i = 0; i < m; ++i) v[i] = at(o + i, k);
        v[0] -= alpha;
        double vnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) vnorm += std::norm(v[i]);
        const double inv = 1.0 / std::sqrt(vnorm);
        for (std::size_t i = 0; i < m; ++i) v[i] *= inv;

        // Trailing block update: M -= 2 (v w* + w v*), w = M v - (v* M v) v.
        for (std::size_t i = 0; i < m; ++i) p[i] = Complex{};
        for (std::size_t i = 0; i < m; ++i) {
            const Complex* row = &at(o + i, o);
            const double vr = v[i].real();
            const double vi = v[i].imag();
            double ar = row[i].real() * vr;
            double ai = row[i].real() * vi;
            for (std::size_t j = 0; j < i; ++j) {
                const double hr = row[j].real();
                const double hi = row[j].imag();
                ar += hr * v[j].real() - hi * v[j].imag();
                ai += hr * v[j].imag() + hi * v[j].real();
                // conj(h_ij) v_i
                p[j] += Complex{hr * vr + hi * vi, hr * vi - hi * vr};
            }
            p[i] += Complex{ar, ai};
        }
        double kappa = 0.0;
        for (std::size_t i = 0; i < m; ++i) kappa += (std::conj(v[i]) * p[i]).real();
        for (std::size_t i = 0; i < m; ++i) p[i] -= kappa * v[i];
        for (std::size_t i = 0; i < m; ++i) {
            Complex* row = &at(o + i, o);
            const double vr = 2.0 * v[i].real();
            const double vi = 2.0 * v[i].imag();
            const double pr = 2.0 * p[i].real();
            const double pi = 2.0 * p[i].imag();
            for (std::size_t j = 0; j <= i; ++j) {
                const double qr = p[j].real();
                const double qi = p[j].imag();
                const double wr = v[j].real();
                const double wi = v[j].imag();
                row[j] -= Complex{vr * qr + vi * qi + pr * wr + pi * wi, vi * qr - vr * qi + pi * wr - pr * wi};
            }
        }
        at(k + 1, k) = alpha;
    }
    for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = std::sqrt(std::norm(at(i + 1, i)));
    e[n - 1] = 0.0;
}

}  // namespace

CVector HermitianEigen::vector(std::size_t k) const {
    CVector out(vectors.dim());
    for (std::size_t i = 0; i < vectors.dim(); ++i) out[i] = vectors(i, k);
    return out;
}

bool is_hermitian(const ComplexMatrix& h, double rel_tol) noexcept {
    double defect = 0.0;
    for (std::size_t i = 0; i < h.dim(); ++i)
        for (std::size_t j = 0; j < h.dim(); ++j) defect += std::norm(h(i, j) - std::conj(h(j, i)));
    return std::sqrt(defect) <= rel_tol * frobenius_norm(h);
}

ComplexMatrix checked_hermitian(const ComplexMatrix& h, double rel_tol) {
    if (h.empty()) throw Error(ErrorKind::InvalidMatrix, "empty matrix");
    if (!is_hermitian(h, rel_tol)) {
        throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within tolerance");
    }
    return hermitian_part(h);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& input, double eps_res) {
    ComplexMatrix h = checked_hermitian(input);
    const std::size_t n = h.dim();
    if (eps_res <= 0.0) eps_res = tolerance::res_per_dim * static_cast<double>(n);

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = frobenius_norm(h);
    double off = off_diagonal_norm(h);

    for (int sweep = 0; sweep < tolerance::jacobi_sweeps && off > 0.0; ++sweep) {
        if (off <= 1e-16 * scale) break;
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex c = h(p, q);
                const double g = std::abs(c);
                if (g == 0.0) continue;
                const double a = h(p, p).real();
                const double b = h(q, q).real();
                if (sweep > 3 && g <= 1e-18 * (std::abs(a) + std::abs(b))) {
                    h(p, q) = 0.0;
                    h(q, p) = 0.0;
                    continue;
                }
                rotated = true;
                const double tau = (b - a) / (2.0 * g);
                double t;
                if (std::abs(tau) > 1e150) {
                    t = 0.5 / tau;
                } else {
                    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                const Complex ph = c / g;
                const Complex phc = std::conj(ph);

                // H <- H U with U = [[cs, sn], [-sn e^{-i phi}, cs e^{-i phi}]].
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex hkp = h(k, p);
                    const Complex hkq = h(k, q);
                    h(k, p) = hkp * cs - hkq * (sn * phc);
                    h(k, q) = hkp * sn + hkq * (cs * phc);
                }
                // H <- U* H.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex hpk = h(p, k);
                    const Complex hqk = h(q, k);
                    h(p, k) = cs * hpk - (sn * ph) * hqk;
                    h(q, k) = sn * hpk + (cs * ph) * hqk;
                }
                h(p, p) = a - t * g;
                h(q, q) = b + t * g;
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * cs - vkq * (sn * phc);
                    v(k, q) = vkp * sn + vkq * (cs * phc);
                }
            }
        }
        off = off_diagonal_norm(h);
        if (!rotated) break;
    }

    double hnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) hnorm = std::max(hnorm, std::abs(h(i, i).real()));
    if (off > eps_res * (1.0 + hnorm)) {
        throw Error(ErrorKind::NoConvergence, "Jacobi sweeps left off-diagonal mass " +
                                                  std::to_string(off));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return h(x, x).real() < h(y, y).real();
    });
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = h(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& input) {
    return detail::eigenvalues_unchecked(checked_hermitian(input));
}

namespace detail {

std::vector<double> eigenvalues_unchecked(ComplexMatrix h) {
    const std::size_t n = h.dim();
    if (n == 1) return {h(0, 0).real()};
    if (n == 2) {
        const double a = h(0, 0).real();
        const double b = h(1, 1).real();
        const double mid = 0.5 * (a + b);
        const double rad = std::hypot(0.5 * (a - b), std::abs(h(0, 1)));
        return {mid - rad, mid + rad};
    }
    std::vector<double> d(n);
    std::vector<double> e(n);
    CVector v(n);
    CVector p(n);
    tridiagonalize(h.entries().data(), n, d.data(), e.data(), v.data(), p.data());
    tridiagonal_ql(d.data(), e.data(), static_cast<int>(n));
    std::sort(d.begin(), d.end());
    return d;
}

std::pair<double, double> extreme_eigenvalues(std::span<const Complex> h, std::size_t n, EigenWorkspace& ws) {
    if (n == 1) return {h[0].real(), h[0].real()};
    if (n == 2) {
        const double a = h[0].real();
        const double b = h[3].real();
        const double mid = 0.5 * (a + b);
        const Complex c = h[2];
        const double half = 0.5 * (a - b);
        const double rad = std::sqrt(half * half + std::norm(c));
        return {mid - rad, mid + rad};
    }
    ws.h.assign(h.begin(), h.end());
    ws.d.resize(n);
    ws.e.resize(n);
    ws.v.resize(n);
    ws.p.resize(n);
    tridiagonalize(ws.h.data(), n, ws.d.data(), ws.e.data(), ws.v.data(), ws.p.data());
    tridiagonal_ql(ws.d.data(), ws.e.data(), static_cast<int>(n));
    const auto [lo, hi] = std::minmax_element(ws.d.begin(), ws.d.end());
    return {*lo, *hi};
}

}  // namespace detail

double operator_norm(const ComplexMatrix& a) {
    if (a.empty()) throw Error(ErrorKind::InvalidMatrix, "empty matrix");
    const auto ev = hermitian_eigenvalues(gram(a));
    return std::sqrt(std::max(ev.back(), 0.0));
}

ComplexMatrix abs_operator(const ComplexMatrix& a) {
    const auto eig = hermitian_eigen(gram(a));
    return apply_spectral(eig, [](double t) { return std::sqrt(std::max(t, 0.0)); });
}

ComplexMatrix apply_scalar_function(const ScalarFunction& f, const HermitianEigen& eig) {
    const Interval& dom = f.domain();
    double spread = 0.0;
    for (double l : eig.eigenvalues) spread = std::max(spread, std::abs(l));
    const double clamp_slack = tolerance::herm * spread;
    const double open_margin = tolerance::inv * spread;

    std::vector<double> lambdas = eig.eigenvalues;
    for (double& l : lambdas) {
        if (dom.contains(l)) {
            if (!dom.lo_closed && l - dom.lo <= open_margin) {
                throw Error(ErrorKind::DomainViolation,
                            "eigenvalue " + std::to_string(l) + " within the invertibility cutoff of " +
                                f.name() + "'s domain boundary");
            }
            if (!dom.hi_closed && dom.hi - l <= open_margin) {
                throw Error(ErrorKind::DomainViolation,
                            "eigenvalue " + std::to_string(l) + " too close to " + f.name() +
                                "'s domain boundary");
            }
            continue;
        }
        if (dom.lo_closed && l < dom.lo && l >= dom.lo - clamp_slack) {
            l = dom.lo;
        } else if (dom.hi_closed && l > dom.hi && l <= dom.hi + clamp_slack) {
            l = dom.hi;
        } else {
            throw Error(ErrorKind::DomainViolation,
                        "eigenvalue " + std::to_string(l) + " outside the domain of " + f.name());
        }
    }
    HermitianEigen clamped{std::move(lambdas), eig.vectors};
    return apply_spectral(clamped, [&](double t) { return f(t); });
}

ComplexMatrix apply_scalar_function(const ScalarFunction& f, const ComplexMatrix& h) {
    return apply_scalar_function(f, hermitian_eigen(h));
}

ComplexMatrix psd_power(const ComplexMatrix& p, double exponent) {
    return apply_scalar_function(ScalarFunction::power(exponent), p);
}

double lambda_min(const ComplexMatrix& h) { return hermitian_eigenvalues(h).front(); }

double lambda_max(const ComplexMatrix& h) { return hermitian_eigenvalues(h).back(); }

double hermitian_norm(const ComplexMatrix& h) {
    const auto ev = hermitian_eigenvalues(h);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

bool loewner_leq(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    const auto ea = hermitian_eigenvalues(a);
    const auto eb = hermitian_eigenvalues(b);
    const double na = std::max(std::abs(ea.front()), std::abs(ea.back()));
    const double nb = std::max(std::abs(eb.front()), std::abs(eb.back()));
    return lambda_min(b - a) >= -tol * (1.0 + na + nb);
}

}  // namespace nrlab
