#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nrlab {

enum class ErrorKind {
    NotHermitian,
    NoConvergence,
    DomainViolation,
    NotInvertible,
    NotPositive,
    DimensionMismatch,
    InvalidBounds,
    UnsupportedParameter,
    NotSuperquadratic,
    BudgetExhausted,
    InvalidMatrix,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a machine-readable kind so that
// the certification layer can turn it into a NotApplicable reason.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace nrlab
