#pragma once

#include <string>
#include <string_view>

#include "nrlab/matrix.hpp"

namespace nrlab {

/// Matrix exchange document: {"dim": n, "rows": [[[re, im], ...], ...]}.
/// Syntax errors throw ParseError with "line L, column C"; shape errors
/// throw ParseError naming the offending row/entry.
ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::string& path);

/// Exchange document for `m`, compact (one row per line).
std::string format_matrix(const ComplexMatrix& m);

}  // namespace nrlab
