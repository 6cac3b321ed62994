#include "nrlab/error.hpp"

namespace nrlab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::DomainViolation: return "DomainViolation";
        case ErrorKind::NotInvertible: return "NotInvertible";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidBounds: return "InvalidBounds";
        case ErrorKind::UnsupportedParameter: return "UnsupportedParameter";
        case ErrorKind::NotSuperquadratic: return "NotSuperquadratic";
        case ErrorKind::BudgetExhausted: return "BudgetExhausted";
        case ErrorKind::InvalidMatrix: return "InvalidMatrix";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace nrlab
