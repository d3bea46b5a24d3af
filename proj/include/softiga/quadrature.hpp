#pragma once

#include <vector>

namespace softiga {

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // positive, summing to 2
};

inline constexpr int kMaxQuadratureOrder = 30;

/// q-point Gauss-Legendre rule, exact for polynomials of degree 2q-1.
/// Valid for 1 <= q <= kMaxQuadratureOrder.
QuadratureRule gauss_rule(int q);

} // namespace softiga
