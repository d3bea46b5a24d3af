#pragma once

#include <span>
#include <vector>

namespace softiga::experiments {

/// y = slope * x + intercept by least squares.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
  bool valid = false;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Observed order of e ~ C h^order. Points with e below window_factor * floor
/// are excluded from the fit.
struct ConvergenceFit {
  std::vector<double> h;
  std::vector<double> e;
  std::vector<bool> used;
  double order = 0.0;
  double log_constant = 0.0;  // natural log of C
  bool valid = false;
};

ConvergenceFit fit_convergence(std::span<const double> h, std::span<const double> e,
                               double floor = 5e-12, double window_factor = 10.0);

} // namespace softiga::experiments
