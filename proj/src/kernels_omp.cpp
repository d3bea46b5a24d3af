#include <omp.h>

#include "kernels_common.hpp"

namespace softiga::kernels::omp {

// Elements e and e' touch disjoint functions when |e - e'| > p, so elements of
// one residue class modulo p+1 scatter without write conflicts.

SymBandMatrix weighted_product_1d(const SplineSpace& space, const QuadratureRule& quad, int r,
                                  const Field1D& weight, DofSet dofs) {
  const int p = space.degree();
  const auto ne = static_cast<std::ptrdiff_t>(space.num_elements());
  SymBandMatrix out(detail::num_dofs(space, dofs), static_cast<std::size_t>(p));
  for (int color = 0; color <= p; ++color) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t e = color; e < ne; e += p + 1) {
      const auto el = static_cast<std::size_t>(e);
      detail::scatter_1d(out, space, el, detail::local_weighted_product(space, quad, el, r, weight),
                         dofs);
    }
  }
  return out;
}

void add_weighted_mass_2d(TensorBandMatrix& out, const SplineSpace& sx, const SplineSpace& sy,
                          const QuadratureRule& quad, const Field2D& weight) {
  const int px = sx.degree(), py = sy.degree();
  const auto nex = static_cast<std::ptrdiff_t>(sx.num_elements());
  const auto ney = static_cast<std::ptrdiff_t>(sy.num_elements());
  detail::check_mass_2d_shapes(out, sx, sy);
  for (int cx = 0; cx <= px; ++cx) {
    for (int cy = 0; cy <= py; ++cy) {
      const std::ptrdiff_t mx = (nex - cx + px) / (px + 1);
      const std::ptrdiff_t my = (ney - cy + py) / (py + 1);
#pragma omp parallel for collapse(2) schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < mx; ++i) {
        for (std::ptrdiff_t j = 0; j < my; ++j) {
          const auto ex = static_cast<std::size_t>(cx + i * (px + 1));
          const auto ey = static_cast<std::size_t>(cy + j * (py + 1));
          detail::scatter_2d(out, sx, sy, ex, ey,
                             detail::local_weighted_mass_2d(sx, sy, quad, ex, ey, weight));
        }
      }
    }
  }
}

void add_kron(TensorBandMatrix& out, const SymBandMatrix& a, const SymBandMatrix& b, double s) {
  detail::check_kron_shapes(out, a, b);
  const auto nx = static_cast<std::ptrdiff_t>(out.nx());
  const auto ny = static_cast<std::ptrdiff_t>(out.ny());
#pragma omp parallel for collapse(2) schedule(static)
  for (std::ptrdiff_t ix = 0; ix < nx; ++ix)
    for (std::ptrdiff_t iy = 0; iy < ny; ++iy)
      detail::kron_row(out, a, b, s, static_cast<std::size_t>(ix), static_cast<std::size_t>(iy));
}

} // namespace softiga::kernels::omp
