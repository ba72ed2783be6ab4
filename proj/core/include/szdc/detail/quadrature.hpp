#pragma once

#include <vector>

#include "szdc/detail/double_double.hpp"

namespace szdc::detail {

// Gauss-Legendre nodes/weights on [-1, 1] to double-double accuracy.
// Newton iteration on the Legendre recurrence; double seeds, then two
// further corrections carried out in DD.
struct DDQuadratureRule {
  std::vector<DD> nodes;
  std::vector<DD> weights;
};

// Cached by node count; thread safe.
const DDQuadratureRule& dd_gauss_legendre(int count);

}  // namespace szdc::detail
