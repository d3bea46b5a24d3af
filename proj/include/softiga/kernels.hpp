#pragma once

// Element-loop kernels behind the assembly module. Each kernel exists twice:
// `serial` is the straightforward reference loop, `omp` the OpenMP version
// with conflict-free colored accumulation. Both must produce identical
// matrices up to summation order; tests compare them entry by entry.

#include <functional>

#include "softiga/band_matrix.hpp"
#include "softiga/quadrature.hpp"
#include "softiga/spline_space.hpp"
#include "softiga/tensor_band_matrix.hpp"

namespace softiga {

/// Which functions of a SplineSpace index the assembled matrix.
enum class DofSet {
  interior,  // Dirichlet-trimmed, size n + p - 2
  all,       // untrimmed, size n + p
};

enum class Execution { serial, parallel };

using Field1D = std::function<double(double)>;
using Field2D = std::function<double(double, double)>;

namespace kernels {

namespace serial {

/// sum_e int_e w(x) phi_k^(r)(x) phi_l^(r)(x) dx, r in {0, 1}.
SymBandMatrix weighted_product_1d(const SplineSpace& space, const QuadratureRule& quad, int r,
                                  const Field1D& weight, DofSet dofs);

/// int int w(x, y) phi_i(x) phi_k(y) phi_j(x) phi_l(y) on the interior tensor space.
void add_weighted_mass_2d(TensorBandMatrix& out, const SplineSpace& sx, const SplineSpace& sy,
                          const QuadratureRule& quad, const Field2D& weight);

/// out += s * (A kron B), A acting on x and B on y.
void add_kron(TensorBandMatrix& out, const SymBandMatrix& a, const SymBandMatrix& b, double s);

} // namespace serial

namespace omp {

SymBandMatrix weighted_product_1d(const SplineSpace& space, const QuadratureRule& quad, int r,
                                  const Field1D& weight, DofSet dofs);

void add_weighted_mass_2d(TensorBandMatrix& out, const SplineSpace& sx, const SplineSpace& sy,
                          const QuadratureRule& quad, const Field2D& weight);

void add_kron(TensorBandMatrix& out, const SymBandMatrix& a, const SymBandMatrix& b, double s);

} // namespace omp

} // namespace kernels

} // namespace softiga
