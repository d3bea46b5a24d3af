#include "softiga/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "softiga/error.hpp"

namespace softiga {

namespace {

// (P_q(x), P_q'(x)) by the three-term recurrence.
std::pair<double, double> legendre(int q, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= q; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, q * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace

QuadratureRule gauss_rule(int q) {
  if (q < 1 || q > kMaxQuadratureOrder)
    throw InvalidArgument("gauss_rule: order " + std::to_string(q) + " out of range [1, " +
                          std::to_string(kMaxQuadratureOrder) + "]");

  QuadratureRule rule;
  rule.order = q;
  rule.nodes.resize(q);
  rule.weights.resize(q);

  // Roots are symmetric; Newton from the usual cosine guess on the upper half.
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(q, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double dp = legendre(q, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[q - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[q - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (q % 2 == 1)
    rule.nodes[q / 2] = 0.0;
  return rule;
}

} // namespace softiga
