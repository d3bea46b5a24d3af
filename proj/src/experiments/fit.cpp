#include "softiga/experiments/fit.hpp"

#include <cmath>

#include "softiga/error.hpp"

namespace softiga::experiments {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw InvalidArgument("least_squares: x and y differ in length");
  LinearFit f;
  f.points = x.size();
  if (x.size() < 2)
    return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0)
    return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.valid = std::isfinite(f.slope) && std::isfinite(f.intercept);
  return f;
}

ConvergenceFit fit_convergence(std::span<const double> h, std::span<const double> e, double floor,
                               double window_factor) {
  if (h.size() != e.size())
    throw InvalidArgument("fit_convergence: h and e differ in length");
  ConvergenceFit fit;
  fit.h.assign(h.begin(), h.end());
  fit.e.assign(e.begin(), e.end());
  fit.used.assign(h.size(), false);
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] > 0.0 && std::isfinite(e[i]) && e[i] > window_factor * floor) {
      fit.used[i] = true;
      lx.push_back(std::log(h[i]));
      ly.push_back(std::log(e[i]));
    }
  }
  const LinearFit lf = least_squares(lx, ly);
  fit.valid = lf.valid;
  fit.order = lf.slope;
  fit.log_constant = lf.intercept;
  return fit;
}

} // namespace softiga::experiments
