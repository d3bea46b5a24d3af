#pragma once

#include <span>
#include <utility>
#include <vector>

#include "softiga/spline_space.hpp"

namespace softiga {

/// u(x) = sum_j c_j phi_j(x) at every grid point (interior numbering).
std::vector<double> sample_eigenfunction(const SplineSpace& space,
                                         std::span<const double> coefficients,
                                         std::span<const double> grid);

/// Tensor-product evaluation; coefficients indexed ix * Ny + iy.
std::vector<double> sample_eigenfunction(const SplineSpace& space_x, const SplineSpace& space_y,
                                         std::span<const double> coefficients,
                                         std::span<const std::pair<double, double>> grid);

} // namespace softiga
