#include "kernels_common.hpp"

namespace softiga::kernels::serial {

SymBandMatrix weighted_product_1d(const SplineSpace& space, const QuadratureRule& quad, int r,
                                  const Field1D& weight, DofSet dofs) {
  const int p = space.degree();
  SymBandMatrix out(detail::num_dofs(space, dofs), static_cast<std::size_t>(p));
  for (std::size_t e = 0; e < space.num_elements(); ++e)
    detail::scatter_1d(out, space, e, detail::local_weighted_product(space, quad, e, r, weight),
                       dofs);
  return out;
}

void add_weighted_mass_2d(TensorBandMatrix& out, const SplineSpace& sx, const SplineSpace& sy,
                          const QuadratureRule& quad, const Field2D& weight) {
  detail::check_mass_2d_shapes(out, sx, sy);
  for (std::size_t ex = 0; ex < sx.num_elements(); ++ex)
    for (std::size_t ey = 0; ey < sy.num_elements(); ++ey)
      detail::scatter_2d(out, sx, sy, ex, ey,
                         detail::local_weighted_mass_2d(sx, sy, quad, ex, ey, weight));
}

void add_kron(TensorBandMatrix& out, const SymBandMatrix& a, const SymBandMatrix& b, double s) {
  detail::check_kron_shapes(out, a, b);
  for (std::size_t ix = 0; ix < out.nx(); ++ix)
    for (std::size_t iy = 0; iy < out.ny(); ++iy)
      detail::kron_row(out, a, b, s, ix, iy);
}

} // namespace softiga::kernels::serial
