#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "nrlab/function.hpp"
#include "nrlab/matrix.hpp"
#include "nrlab/rng.hpp"

namespace nrlab {

struct GenericComplex {};
struct Normal {};
struct SquareZero {};
struct Positive {};
struct PositiveInvertible {
    double lo = 0.5;
    double hi = 2.0;
};
struct OrderedPair {
    double gap = 0.5;
};
struct SandwichTriple {
    double gap = 0.5;
};

using EnsembleKind =
    std::variant<GenericComplex, Normal, SquareZero, Positive, PositiveInvertible, OrderedPair, SandwichTriple>;

/// Recipe for random instances. Every draw is a pure function of
/// (seed, index), independent of what else has been sampled.
struct EnsembleSpec {
    std::size_t dim = 2;
    EnsembleKind kind = GenericComplex{};
    double scale = 1.0;
    std::uint64_t seed = 0;

    /// Throws UnsupportedParameter when dim, scale or the kind parameters are
    /// out of range.
    void validate() const;
};

/// "generic", "normal", "square-zero", "positive",
/// "positive-invertible[:lo:hi]", "ordered-pair[:gap]", "sandwich-triple[:gap]".
std::string kind_name(const EnsembleKind& kind);
EnsembleKind parse_kind(std::string_view name);

/// Matrices drawn for one index. For OrderedPair, a <= b; for SandwichTriple,
/// the lower of S = B* f^2(|X|) B and T = A* g^2(|X*|) A sits below `m` and the
/// upper above `M`, both verified on the built matrices.
struct EnsembleSample {
    ComplexMatrix a;
    ComplexMatrix b;
    ComplexMatrix x;
    double m = 0.0;
    double M = 0.0;
    bool s_is_lower = true;
};

/// Draws a, b and x from the kind. SandwichTriple uses the pair (sqrt, sqrt).
EnsembleSample sample(const EnsembleSpec& spec, std::uint64_t index);

/// SandwichTriple draw for a chosen Schwarz pair. f^2 and g^2 must be positive
/// on the singular values of X. Throws BudgetExhausted if the verified bounds
/// do not separate (should not happen for the catalog pairs).
EnsembleSample sample_sandwich(const EnsembleSpec& spec, std::uint64_t index, const SchwarzPair& pair,
                               double gap);

CVector sample_unit_vector(std::size_t dim, std::uint64_t seed, std::uint64_t index);

/// Haar-distributed unitary from the QR factorization of a complex Ginibre
/// matrix (modified Gram-Schmidt, positive diagonal of R).
ComplexMatrix random_unitary(std::size_t n, CounterRng& rng);

ComplexMatrix random_gaussian(std::size_t n, CounterRng& rng, double scale = 1.0);
ComplexMatrix random_hermitian(std::size_t n, CounterRng& rng, double scale = 1.0);
ComplexMatrix random_normal(std::size_t n, CounterRng& rng, double scale = 1.0);
ComplexMatrix random_square_zero(std::size_t n, CounterRng& rng, double scale = 1.0);
ComplexMatrix random_positive(std::size_t n, CounterRng& rng, double scale = 1.0);
/// V diag(uniform[lo, hi]) V*.
ComplexMatrix random_positive_spectrum(std::size_t n, CounterRng& rng, double lo, double hi);

/// U diag(values) U*.
ComplexMatrix unitary_similarity(const ComplexMatrix& u, std::span<const double> values);

}  // namespace nrlab
