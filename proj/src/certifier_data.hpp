#pragma once

// Internal: coefficient tables behind the family certifier.

#include "lcentropy/certifier.hpp"

namespace lcentropy::detail {

/// One e^{k y} group of the closed-form expansion f_n(y) =
/// sum_groups e^{k y} sum_l coef_{k,l}(n) y^l, n >= 5.
struct CoefficientGroup {
    int y_exponent;
    std::vector<ExpPolySequence> coefficients;  // index = power of y
};

const std::vector<CoefficientGroup>& family_coefficients(Family f);

}  // namespace lcentropy::detail
