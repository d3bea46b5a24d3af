#include "softiga/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "softiga/error.hpp"

namespace softiga {

Mesh1D::Mesh1D(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2)
    throw InvalidArgument("mesh needs at least one element");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw InvalidArgument("mesh breakpoints must be strictly increasing (index " +
                            std::to_string(i) + ")");
  }
}

std::vector<double> Mesh1D::element_sizes() const {
  std::vector<double> sizes(num_elements());
  for (std::size_t e = 0; e < sizes.size(); ++e)
    sizes[e] = element_size(e);
  return sizes;
}

double Mesh1D::max_element_size() const {
  double h = 0.0;
  for (std::size_t e = 0; e < num_elements(); ++e)
    h = std::max(h, element_size(e));
  return h;
}

std::size_t Mesh1D::find_element(double x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin())
    return 0;
  std::size_t e = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return std::min(e, num_elements() - 1);
}

bool Mesh1D::is_symmetric(double tol) const {
  const std::size_t n = num_elements();
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::abs(breakpoints_[i] + breakpoints_[n - i]) > tol)
      return false;
  }
  return true;
}

Mesh1D uniform_mesh(double half_width, std::size_t n) {
  if (!(half_width > 0.0) || n < 1)
    throw InvalidArgument("uniform_mesh: half_width and n must be positive");
  std::vector<double> bp(n + 1);
  const double dn = static_cast<double>(n);
  // x_i = x_eps*(2i - n)/n is exactly antisymmetric in i <-> n - i.
  for (std::size_t i = 0; i <= n; ++i)
    bp[i] = half_width * (2.0 * static_cast<double>(i) - dn) / dn;
  return Mesh1D(std::move(bp));
}

Mesh1D graded_mesh(const GradedMeshSpec& spec) {
  if (!(spec.half_width > 0.0))
    throw InvalidArgument("graded_mesh: half_width must be positive");
  if (spec.n < 2 || spec.n % 2 != 0)
    throw InvalidArgument("graded_mesh: element count must be even and >= 2");
  if (spec.growth < 0.0 || !std::isfinite(spec.growth))
    throw InvalidArgument("graded_mesh: growth must be non-negative");

  const std::size_t m = spec.n / 2;
  const double g = spec.growth;
  // Cumulative size of the first i elements of a half, in units of the central size.
  auto cumulative = [g](double i) { return i + g * i * (i - 1.0) / 2.0; };
  const double total = cumulative(static_cast<double>(m));

  std::vector<double> bp(spec.n + 1);
  bp[m] = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    const double x = spec.half_width * cumulative(static_cast<double>(i)) / total;
    bp[m + i] = x;
    bp[m - i] = -x;
  }
  bp.back() = spec.half_width;
  bp.front() = -spec.half_width;
  return Mesh1D(std::move(bp));
}

} // namespace softiga
