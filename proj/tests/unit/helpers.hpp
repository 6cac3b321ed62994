#pragma once

#include <algorithm>
#include <cmath>

#include "nrlab/matrix.hpp"

namespace nrlab::test {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

}  // namespace nrlab::test
