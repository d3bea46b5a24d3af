#include "softiga/sampling.hpp"

#include "softiga/error.hpp"

namespace softiga {

std::vector<double> sample_eigenfunction(const SplineSpace& space,
                                         std::span<const double> coefficients,
                                         std::span<const double> grid) {
  if (coefficients.size() != space.dimension())
    throw InvalidArgument("sample_eigenfunction: coefficient length does not match the space");
  std::vector<double> out;
  out.reserve(grid.size());
  for (double x : grid)
    out.push_back(space.evaluate(coefficients, x));
  return out;
}

std::vector<double> sample_eigenfunction(const SplineSpace& space_x, const SplineSpace& space_y,
                                         std::span<const double> coefficients,
                                         std::span<const std::pair<double, double>> grid) {
  const std::size_t ny = space_y.dimension();
  if (coefficients.size() != space_x.dimension() * ny)
    throw InvalidArgument("sample_eigenfunction: coefficient length does not match the space");
  const int px = space_x.degree(), py = space_y.degree();
  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& [x, y] : grid) {
    const BasisTable tx = space_x.table(x, 0);
    const BasisTable ty = space_y.table(y, 0);
    double u = 0.0;
    for (int a = 0; a <= px; ++a) {
      const auto ix = space_x.interior_index(tx.first() + static_cast<std::size_t>(a));
      if (!ix)
        continue;
      for (int b = 0; b <= py; ++b) {
        const auto iy = space_y.interior_index(ty.first() + static_cast<std::size_t>(b));
        if (iy)
          u += coefficients[*ix * ny + *iy] * tx(0, a) * ty(0, b);
      }
    }
    out.push_back(u);
  }
  return out;
}

} // namespace softiga
