#pragma once

// Element-local computations shared by the serial and OpenMP kernels.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "softiga/error.hpp"
#include "softiga/kernels.hpp"

namespace softiga::kernels::detail {

inline std::optional<std::size_t> map_dof(const SplineSpace& space, std::size_t untrimmed,
                                          DofSet dofs) {
  if (dofs == DofSet::all)
    return untrimmed;
  return space.interior_index(untrimmed);
}

inline std::size_t num_dofs(const SplineSpace& space, DofSet dofs) {
  return dofs == DofSet::all ? space.untrimmed_dimension() : space.dimension();
}

/// Quadrature points of one element: physical coordinates, scaled weights and
/// the basis derivative of order r at each point (row-major: point x function).
struct ElementSamples {
  std::size_t first = 0;
  std::vector<double> x;
  std::vector<double> w;
  std::vector<double> basis;
};

inline ElementSamples sample_element(const SplineSpace& space, const QuadratureRule& quad,
                                     std::size_t element, int r) {
  const int p = space.degree();
  const double a = space.mesh().breakpoint(element);
  const double b = space.mesh().breakpoint(element + 1);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  ElementSamples s;
  s.first = element;
  const std::size_t nq = quad.nodes.size();
  s.x.resize(nq);
  s.w.resize(nq);
  s.basis.resize(nq * static_cast<std::size_t>(p + 1));
  for (std::size_t q = 0; q < nq; ++q) {
    s.x[q] = mid + half * quad.nodes[q];
    s.w[q] = half * quad.weights[q];
    const BasisTable t = space.element_table(element, s.x[q], r);
    for (int j = 0; j <= p; ++j)
      s.basis[q * static_cast<std::size_t>(p + 1) + static_cast<std::size_t>(j)] = t(r, j);
  }
  return s;
}

/// Local (p+1) x (p+1) matrix of int w phi_a^(r) phi_b^(r) over one element.
inline std::vector<double> local_weighted_product(const SplineSpace& space,
                                                  const QuadratureRule& quad, std::size_t element,
                                                  int r, const Field1D& weight) {
  const auto np = static_cast<std::size_t>(space.degree() + 1);
  const ElementSamples s = sample_element(space, quad, element, r);
  std::vector<double> local(np * np, 0.0);
  for (std::size_t q = 0; q < s.x.size(); ++q) {
    const double wq = s.w[q] * weight(s.x[q]);
    const double* phi = &s.basis[q * np];
    for (std::size_t a = 0; a < np; ++a)
      for (std::size_t b = 0; b <= a; ++b)
        local[a * np + b] += wq * phi[a] * phi[b];
  }
  return local;  // lower triangle only
}

inline void scatter_1d(SymBandMatrix& out, const SplineSpace& space, std::size_t element,
                       const std::vector<double>& local, DofSet dofs) {
  const auto np = static_cast<std::size_t>(space.degree() + 1);
  for (std::size_t a = 0; a < np; ++a) {
    const auto ia = map_dof(space, element + a, dofs);
    if (!ia)
      continue;
    for (std::size_t b = 0; b <= a; ++b) {
      const auto ib = map_dof(space, element + b, dofs);
      if (ib)
        out.add(*ia, *ib, local[a * np + b]);
    }
  }
}

/// Local ((p+1)^2)^2 matrix of int int w phi_a(x) psi_b(y) phi_c(x) psi_d(y) on
/// element (ex, ey), indexed [(a*npy + b) * nloc + (c*npy + d)], full storage.
inline std::vector<double> local_weighted_mass_2d(const SplineSpace& sx, const SplineSpace& sy,
                                                  const QuadratureRule& quad, std::size_t ex,
                                                  std::size_t ey, const Field2D& weight) {
  const auto npx = static_cast<std::size_t>(sx.degree() + 1);
  const auto npy = static_cast<std::size_t>(sy.degree() + 1);
  const ElementSamples gx = sample_element(sx, quad, ex, 0);
  const ElementSamples gy = sample_element(sy, quad, ey, 0);
  const std::size_t nqx = gx.x.size(), nqy = gy.x.size();

  std::vector<double> field(nqx * nqy);
  for (std::size_t qx = 0; qx < nqx; ++qx)
    for (std::size_t qy = 0; qy < nqy; ++qy)
      field[qx * nqy + qy] = gx.w[qx] * gy.w[qy] * weight(gx.x[qx], gy.x[qy]);

  const std::size_t nloc = npx * npy;
  std::vector<double> local(nloc * nloc, 0.0);
  std::vector<double> g(nqy);
  // Sum factorization: contract x first for each (a, c), then y.
  for (std::size_t a = 0; a < npx; ++a) {
    for (std::size_t c = 0; c <= a; ++c) {
      std::fill(g.begin(), g.end(), 0.0);
      for (std::size_t qx = 0; qx < nqx; ++qx) {
        const double pac = gx.basis[qx * npx + a] * gx.basis[qx * npx + c];
        for (std::size_t qy = 0; qy < nqy; ++qy)
          g[qy] += pac * field[qx * nqy + qy];
      }
      for (std::size_t b = 0; b < npy; ++b) {
        for (std::size_t d = 0; d < npy; ++d) {
          double v = 0.0;
          for (std::size_t qy = 0; qy < nqy; ++qy)
            v += gy.basis[qy * npy + b] * gy.basis[qy * npy + d] * g[qy];
          local[(a * npy + b) * nloc + (c * npy + d)] = v;
          local[(c * npy + d) * nloc + (a * npy + b)] = v;
        }
      }
    }
  }
  return local;
}

inline void scatter_2d(TensorBandMatrix& out, const SplineSpace& sx, const SplineSpace& sy,
                       std::size_t ex, std::size_t ey, const std::vector<double>& local) {
  const auto npx = static_cast<std::size_t>(sx.degree() + 1);
  const auto npy = static_cast<std::size_t>(sy.degree() + 1);
  const std::size_t nloc = npx * npy;
  for (std::size_t a = 0; a < npx; ++a) {
    const auto ix = sx.interior_index(ex + a);
    if (!ix)
      continue;
    for (std::size_t b = 0; b < npy; ++b) {
      const auto iy = sy.interior_index(ey + b);
      if (!iy)
        continue;
      for (std::size_t c = 0; c < npx; ++c) {
        const auto jx = sx.interior_index(ex + c);
        if (!jx)
          continue;
        for (std::size_t d = 0; d < npy; ++d) {
          const auto jy = sy.interior_index(ey + d);
          if (jy)
            out.ref(*ix, *iy, *jx, *jy) += local[(a * npy + b) * nloc + (c * npy + d)];
        }
      }
    }
  }
}

/// Row (ix, iy) of s * (A kron B) accumulated into `out`.
inline void kron_row(TensorBandMatrix& out, const SymBandMatrix& a, const SymBandMatrix& b,
                     double s, std::size_t ix, std::size_t iy) {
  const std::size_t nx = out.nx(), ny = out.ny();
  const std::size_t ax = a.bandwidth(), by = b.bandwidth();
  const std::size_t jx0 = ix > ax ? ix - ax : 0;
  const std::size_t jx1 = std::min(nx - 1, ix + ax);
  const std::size_t jy0 = iy > by ? iy - by : 0;
  const std::size_t jy1 = std::min(ny - 1, iy + by);
  for (std::size_t jx = jx0; jx <= jx1; ++jx) {
    const double av = s * a(ix, jx);
    for (std::size_t jy = jy0; jy <= jy1; ++jy)
      out.ref(ix, iy, jx, jy) += av * b(iy, jy);
  }
}

inline void check_kron_shapes(const TensorBandMatrix& out, const SymBandMatrix& a,
                              const SymBandMatrix& b) {
  if (a.size() != out.nx() || b.size() != out.ny())
    throw InvalidArgument("add_kron: factor dimensions do not match the tensor space");
  if (a.bandwidth() > out.bx() || b.bandwidth() > out.by())
    throw InvalidArgument("add_kron: factor bandwidth exceeds the tensor stencil");
}

inline void check_mass_2d_shapes(const TensorBandMatrix& out, const SplineSpace& sx,
                                 const SplineSpace& sy) {
  if (out.nx() != sx.dimension() || out.ny() != sy.dimension())
    throw InvalidArgument("weighted mass 2D: output does not match the tensor space");
  if (out.bx() < static_cast<std::size_t>(sx.degree()) ||
      out.by() < static_cast<std::size_t>(sy.degree()))
    throw InvalidArgument("weighted mass 2D: output stencil narrower than the degree");
}

} // namespace softiga::kernels::detail
