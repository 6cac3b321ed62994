#include "nrlab/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "nrlab/error.hpp"
#include "nrlab/linalg.hpp"

namespace nrlab {

namespace {

constexpr std::uint64_t tag_a = 0xA1;
constexpr std::uint64_t tag_b = 0xB2;
constexpr std::uint64_t tag_x = 0xC3;
constexpr std::uint64_t tag_vec = 0xD4;
constexpr std::uint64_t tag_sandwich = 0xE5;

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string fmt(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

double parse_param(std::string_view text, std::string_view whole) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::UnsupportedParameter, "bad ensemble parameter in '" + std::string(whole) + "'");
    }
    return v;
}

ComplexMatrix draw_single(const EnsembleSpec& spec, CounterRng& rng) {
    const std::size_t n = spec.dim;
    return std::visit(overloaded{
                          [&](const GenericComplex&) { return random_gaussian(n, rng, spec.scale); },
                          [&](const Normal&) { return random_normal(n, rng, spec.scale); },
                          [&](const SquareZero&) { return random_square_zero(n, rng, spec.scale); },
                          [&](const Positive&) { return random_positive(n, rng, spec.scale); },
                          [&](const PositiveInvertible& k) {
                              return random_positive_spectrum(n, rng, k.lo * spec.scale, k.hi * spec.scale);
                          },
                          [&](const OrderedPair&) { return random_positive(n, rng, spec.scale); },
                          [&](const SandwichTriple&) { return random_gaussian(n, rng, spec.scale); },
                      },
                      spec.kind);
}

}  // namespace

void EnsembleSpec::validate() const {
    if (dim < 1) throw Error(ErrorKind::UnsupportedParameter, "ensemble dimension must be >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw Error(ErrorKind::UnsupportedParameter, "ensemble scale must be positive");
    }
    std::visit(overloaded{
                   [](const PositiveInvertible& k) {
                       if (!(k.lo > 0.0 && k.lo <= k.hi)) {
                           throw Error(ErrorKind::UnsupportedParameter, "positive-invertible needs 0 < lo <= hi");
                       }
                   },
                   [](const OrderedPair& k) {
                       if (!(k.gap > 0.0)) throw Error(ErrorKind::UnsupportedParameter, "gap must be positive");
                   },
                   [](const SandwichTriple& k) {
                       if (!(k.gap > 0.0)) throw Error(ErrorKind::UnsupportedParameter, "gap must be positive");
                   },
                   [](const auto&) {},
               },
               kind);
}

std::string kind_name(const EnsembleKind& kind) {
    return std::visit(overloaded{
                          [](const GenericComplex&) -> std::string { return "generic"; },
                          [](const Normal&) -> std::string { return "normal"; },
                          [](const SquareZero&) -> std::string { return "square-zero"; },
                          [](const Positive&) -> std::string { return "positive"; },
                          [](const PositiveInvertible& k) -> std::string {
                              return "positive-invertible:" + fmt(k.lo) + ":" + fmt(k.hi);
                          },
                          [](const OrderedPair& k) -> std::string { return "ordered-pair:" + fmt(k.gap); },
                          [](const SandwichTriple& k) -> std::string { return "sandwich-triple:" + fmt(k.gap); },
                      },
                      kind);
}

EnsembleKind parse_kind(std::string_view name) {
    const auto colon = name.find(':');
    const auto head = name.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string_view::npos) {
        std::string_view rest = name.substr(colon + 1);
        while (true) {
            const auto c = rest.find(':');
            params.push_back(parse_param(rest.substr(0, c), name));
            if (c == std::string_view::npos) break;
            rest = rest.substr(c + 1);
        }
    }
    auto expect = [&](std::size_t max_params) {
        if (params.size() > max_params) {
            throw Error(ErrorKind::UnsupportedParameter, "too many parameters in '" + std::string(name) + "'");
        }
    };
    if (head == "generic") return expect(0), EnsembleKind{GenericComplex{}};
    if (head == "normal") return expect(0), EnsembleKind{Normal{}};
    if (head == "square-zero") return expect(0), EnsembleKind{SquareZero{}};
    if (head == "positive") return expect(0), EnsembleKind{Positive{}};
    if (head == "positive-invertible") {
        if (params.size() != 0 && params.size() != 2) {
            throw Error(ErrorKind::UnsupportedParameter, "positive-invertible takes :lo:hi");
        }
        PositiveInvertible k;
        if (params.size() == 2) k = {params[0], params[1]};
        return k;
    }
    if (head == "ordered-pair") {
        expect(1);
        OrderedPair k;
        if (!params.empty()) k.gap = params[0];
        return k;
    }
    if (head == "sandwich-triple") {
        expect(1);
        SandwichTriple k;
        if (!params.empty()) k.gap = params[0];
        return k;
    }
    throw Error(ErrorKind::UnsupportedParameter, "unknown ensemble kind '" + std::string(name) + "'");
}

ComplexMatrix random_gaussian(std::size_t n, CounterRng& rng, double scale) {
    ComplexMatrix g(n);
    const double s = scale / std::sqrt(static_cast<double>(n));
    for (auto& c : g.entries()) c = s * rng.complex_gaussian();
    return g;
}

ComplexMatrix random_hermitian(std::size_t n, CounterRng& rng, double scale) {
    return hermitian_part(random_gaussian(n, rng, scale));
}

ComplexMatrix random_unitary(std::size_t n, CounterRng& rng) {
    ComplexMatrix q(n);
    std::vector<CVector> cols(n, CVector(n));
    for (auto& col : cols)
        for (auto& c : col) c = rng.complex_gaussian();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            const Complex proj = inner(cols[j], cols[k]);
            for (std::size_t i = 0; i < n; ++i) cols[j][i] -= proj * cols[k][i];
        }
        cols[j] = normalized(cols[j]);
        for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
    }
    return q;
}

ComplexMatrix unitary_similarity(const ComplexMatrix& u, std::span<const double> values) {
    const std::size_t n = u.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * values[k] * std::conj(u(j, k));
            out(i, j) = acc;
            out(j, i) = std::conj(acc);
        }
        out(i, i) = out(i, i).real();
    }
    return out;
}

ComplexMatrix random_normal(std::size_t n, CounterRng& rng, double scale) {
    const ComplexMatrix u = random_unitary(n, rng);
    ComplexMatrix d(n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = scale * rng.complex_gaussian();
    return u * d * adjoint(u);
}

ComplexMatrix random_square_zero(std::size_t n, CounterRng& rng, double scale) {
    ComplexMatrix block(n);
    const std::size_t k = n / 2;
    const double s = scale / std::sqrt(static_cast<double>(std::max<std::size_t>(k, 1)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = k; j < n; ++j) block(i, j) = s * rng.complex_gaussian();
    const ComplexMatrix u = random_unitary(n, rng);
    return u * block * adjoint(u);
}

ComplexMatrix random_positive(std::size_t n, CounterRng& rng, double scale) {
    const ComplexMatrix g = random_gaussian(n, rng, 1.0);
    ComplexMatrix p = gram(g);
    p *= Complex{scale, 0.0};
    return p;
}

ComplexMatrix random_positive_spectrum(std::size_t n, CounterRng& rng, double lo, double hi) {
    const ComplexMatrix u = random_unitary(n, rng);
    std::vector<double> values(n);
    for (auto& v : values) v = rng.uniform(lo, hi);
    return unitary_similarity(u, values);
}

EnsembleSample sample(const EnsembleSpec& spec, std::uint64_t index) {
    spec.validate();
    if (const auto* st = std::get_if<SandwichTriple>(&spec.kind)) {
        return sample_sandwich(spec, index, SchwarzPair::powers(0.5), st->gap);
    }
    CounterRng ra(spec.seed, index, tag_a);
    CounterRng rb(spec.seed, index, tag_b);
    CounterRng rx(spec.seed, index, tag_x);
    EnsembleSample out;
    out.a = draw_single(spec, ra);
    out.x = random_gaussian(spec.dim, rx, spec.scale);
    if (const auto* op = std::get_if<OrderedPair>(&spec.kind)) {
        const ComplexMatrix u = random_unitary(spec.dim, rb);
        std::vector<double> values(spec.dim);
        for (auto& v : values) v = rb.uniform(op->gap, op->gap + spec.scale);
        out.b = out.a + unitary_similarity(u, values);
        out.m = op->gap;
    } else {
        out.b = draw_single(spec, rb);
    }
    return out;
}

EnsembleSample sample_sandwich(const EnsembleSpec& spec, std::uint64_t index, const SchwarzPair& pair,
                               double gap) {
    spec.validate();
    if (!(gap > 0.0)) throw Error(ErrorKind::UnsupportedParameter, "gap must be positive");
    const std::size_t n = spec.dim;
    const double c = spec.scale;
    CounterRng rng(spec.seed, index, tag_sandwich);

    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix w = random_unitary(n, rng);
    std::vector<double> sigma(n);
    for (auto& s : sigma) s = rng.uniform(0.5, 2.0) * c;

    ComplexMatrix x(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * sigma[k] * std::conj(w(j, k));
            x(i, j) = acc;
        }

    // f^2(|X|)^{-1/2} = W diag(1/f(sigma)) W*, g^2(|X*|)^{-1/2} = U diag(1/g(sigma)) U*.
    std::vector<double> inv_f(n);
    std::vector<double> inv_g(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fv = pair.f()(sigma[k]);
        const double gv = pair.g()(sigma[k]);
        if (!(fv > 0.0 && gv > 0.0)) {
            throw Error(ErrorKind::UnsupportedParameter, pair.name() + " vanishes on the singular values of X");
        }
        inv_f[k] = 1.0 / fv;
        inv_g[k] = 1.0 / gv;
    }
    const ComplexMatrix f_inv_root = unitary_similarity(w, inv_f);
    const ComplexMatrix g_inv_root = unitary_similarity(u, inv_g);

    std::vector<double> lower(n);
    std::vector<double> upper(n);
    for (auto& l : lower) l = rng.uniform(0.5, 1.0) * c;
    for (auto& h : upper) h = rng.uniform(1.0 + gap, 2.0 + gap) * c;
    const bool s_lower = rng.uniform() < 0.5;
    std::vector<double> s_spec = s_lower ? lower : upper;
    std::vector<double> t_spec = s_lower ? upper : lower;
    for (auto& s : s_spec) s = std::sqrt(s);
    for (auto& t : t_spec) t = std::sqrt(t);

    // B = F^{-1/2} Q1 S^{1/2} gives B* F B = S; likewise for A and T.
    const ComplexMatrix q1 = random_unitary(n, rng);
    const ComplexMatrix q2 = random_unitary(n, rng);
    const ComplexMatrix s_root = unitary_similarity(random_unitary(n, rng), s_spec);
    const ComplexMatrix t_root = unitary_similarity(random_unitary(n, rng), t_spec);

    EnsembleSample out;
    out.x = std::move(x);
    out.b = f_inv_root * q1 * s_root;
    out.a = g_inv_root * q2 * t_root;
    out.s_is_lower = s_lower;

    // Verify on the assembled matrices rather than trusting the design.
    const ComplexMatrix f2 = apply_spectral(hermitian_eigen(gram(out.x)), [&](double t) {
        const double fv = pair.f()(std::sqrt(std::max(t, 0.0)));
        return fv * fv;
    });
    const ComplexMatrix g2 = apply_spectral(hermitian_eigen(cogram(out.x)), [&](double t) {
        const double gv = pair.g()(std::sqrt(std::max(t, 0.0)));
        return gv * gv;
    });
    const auto s_ev = hermitian_eigenvalues(congruence(out.b, f2));
    const auto t_ev = hermitian_eigenvalues(congruence(out.a, g2));
    out.m = s_lower ? s_ev.back() : t_ev.back();
    out.M = s_lower ? t_ev.front() : s_ev.front();
    const double low_min = s_lower ? s_ev.front() : t_ev.front();
    if (!(out.m < out.M) || !(low_min > 0.0)) {
        throw Error(ErrorKind::BudgetExhausted, "sandwich construction lost its spectral gap");
    }
    return out;
}

CVector sample_unit_vector(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
    if (dim < 1) throw Error(ErrorKind::UnsupportedParameter, "vector dimension must be >= 1");
    CounterRng rng(seed, index, tag_vec);
    CVector x(dim);
    while (true) {
        for (auto& c : x) c = rng.complex_gaussian();
        if (norm(x) > 0.0) return normalized(x);
    }
}

}  // namespace nrlab
