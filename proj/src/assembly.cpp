#include "softiga/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "softiga/error.hpp"
#include "softiga/tensor_band_matrix.hpp"

namespace softiga {

int default_quad_order(int degree) { return degree + 3; }

int default_potential_quad_order(int degree) {
  return std::min(degree + 6, kMaxQuadratureOrder);
}

namespace {

SymBandMatrix weighted_product(const SplineSpace& space, const QuadratureRule& quad, int r,
                               const Field1D& weight, DofSet dofs, Execution exec) {
  if (exec == Execution::serial)
    return kernels::serial::weighted_product_1d(space, quad, r, weight, dofs);
  return kernels::omp::weighted_product_1d(space, quad, r, weight, dofs);
}

void add_kron(TensorBandMatrix& out, const SymBandMatrix& a, const SymBandMatrix& b, double s,
              Execution exec) {
  if (exec == Execution::serial)
    kernels::serial::add_kron(out, a, b, s);
  else
    kernels::omp::add_kron(out, a, b, s);
}

bool softness_supported(int degree) { return degree == 1 || degree == 2; }

int resolve(int requested, int fallback) { return requested > 0 ? requested : fallback; }

} // namespace

SymBandMatrix assemble_mass(const SplineSpace& space, const QuadratureRule& quad, DofSet dofs,
                            Execution exec) {
  return weighted_product(space, quad, 0, [](double) { return 1.0; }, dofs, exec);
}

SymBandMatrix assemble_stiffness(const SplineSpace& space, const QuadratureRule& quad,
                                 double kappa, DofSet dofs, Execution exec) {
  if (!(kappa > 0.0))
    throw InvalidArgument("assemble_stiffness: kappa must be positive");
  return weighted_product(space, quad, 1, [kappa](double) { return kappa; }, dofs, exec);
}

SymBandMatrix assemble_potential(const SplineSpace& space, const QuadratureRule& quad,
                                 const Field1D& weight, DofSet dofs, Execution exec) {
  return weighted_product(space, quad, 0, weight, dofs, exec);
}

SymBandMatrix assemble_softness(const SplineSpace& space, double kappa, DofSet dofs) {
  const int p = space.degree();
  if (!softness_supported(p))
    throw InvalidArgument("softness form is only defined for degree 1 or 2, got " +
                          std::to_string(p));
  const std::size_t n = space.num_elements();
  const std::size_t ndofs = dofs == DofSet::all ? space.untrimmed_dimension() : space.dimension();
  SymBandMatrix s(ndofs, static_cast<std::size_t>(p + 1));
  const Mesh1D& mesh = space.mesh();

  for (std::size_t f = 0; f <= n; ++f) {
    const bool boundary = (f == 0 || f == n);
    double weight = 1.0;
    if (boundary)
      weight = (p % 2 == 0) ? 2.0 : 0.0;
    if (weight == 0.0)
      continue;
    double hf = 0.0;
    if (f == 0)
      hf = mesh.element_size(0);
    else if (f == n)
      hf = mesh.element_size(n - 1);
    else
      hf = 0.5 * (mesh.element_size(f - 1) + mesh.element_size(f));
    const double c = weight * kappa * std::pow(hf, 2 * p - 1);

    const SparseVector jump = pth_derivative_jumps(space, f);
    for (std::size_t a = 0; a < jump.index.size(); ++a) {
      const auto ia = dofs == DofSet::all ? std::optional<std::size_t>(jump.index[a])
                                          : space.interior_index(jump.index[a]);
      if (!ia)
        continue;
      for (std::size_t b = 0; b < jump.index.size(); ++b) {
        const auto ib = dofs == DofSet::all ? std::optional<std::size_t>(jump.index[b])
                                            : space.interior_index(jump.index[b]);
        if (ib && *ib <= *ia)
          s.add(*ia, *ib, c * jump.value[a] * jump.value[b]);
      }
    }
  }
  return s;
}

SymBandMatrix soft_stiffness(const SymBandMatrix& k, const SymBandMatrix& s, SoftnessConfig cfg) {
  if (k.size() != s.size())
    throw InvalidArgument("soft_stiffness: dimension mismatch");
  if (cfg.eta == 0.0)
    return k;
  return k.plus_scaled(s, -cfg.eta);
}

Operators1D assemble_1d(const SplineSpace& space, const ProblemSpec& spec, SoftnessConfig cfg,
                        const AssemblyOptions& opts) {
  spec.validate();
  if (spec.dimension != 1)
    throw InvalidArgument("assemble_1d: problem is not one-dimensional");
  if (cfg.eta < 0.0)
    throw InvalidArgument("softness parameter must be non-negative");
  const int p = space.degree();
  const QuadratureRule quad = gauss_rule(resolve(opts.quad_order, default_quad_order(p)));
  const QuadratureRule quad_pot =
      gauss_rule(resolve(opts.quad_order_potential, default_potential_quad_order(p)));
  const double kappa = diffusion(spec).kx;

  Operators1D ops;
  ops.gamma0 = shift(spec);
  ops.mass = assemble_mass(space, quad, DofSet::interior, opts.execution);
  const SymBandMatrix k = assemble_stiffness(space, quad, kappa, DofSet::interior, opts.execution);
  const double gamma0 = ops.gamma0;
  const SymBandMatrix q = assemble_potential(
      space, quad_pot, [&spec, gamma0](double x) { return shifted_potential(spec, gamma0, x); },
      DofSet::interior, opts.execution);
  SymBandMatrix a = k.plus_scaled(q, 1.0);
  if (cfg.eta != 0.0 || softness_supported(p)) {
    ops.softness = assemble_softness(space, kappa);
    a = soft_stiffness(a, ops.softness, cfg);
  }
  ops.stiffness = std::move(a);
  return ops;
}

Operators2D assemble_2d(const SplineSpace& space_x, const SplineSpace& space_y,
                        const ProblemSpec& spec, SoftnessConfig cfg, const AssemblyOptions& opts) {
  spec.validate();
  if (spec.dimension != 2)
    throw InvalidArgument("assemble_2d: problem is not two-dimensional");
  if (space_x.degree() != space_y.degree())
    throw InvalidArgument("assemble_2d: directional spaces must share the degree");
  if (cfg.eta < 0.0)
    throw InvalidArgument("softness parameter must be non-negative");
  const std::size_t nx = space_x.dimension(), ny = space_y.dimension();
  if (nx * ny > opts.max_unknowns)
    throw InvalidArgument("assemble_2d: " + std::to_string(nx * ny) +
                          " unknowns exceed the configured cap of " +
                          std::to_string(opts.max_unknowns));

  const int p = space_x.degree();
  const auto pb = static_cast<std::size_t>(p);
  const QuadratureRule quad = gauss_rule(resolve(opts.quad_order, default_quad_order(p)));
  const QuadratureRule quad_pot =
      gauss_rule(resolve(opts.quad_order_potential, default_potential_quad_order(p)));
  const DiffusionCoeffs kappa = diffusion(spec);
  const Execution exec = opts.execution;

  const SymBandMatrix mx = assemble_mass(space_x, quad, DofSet::interior, exec);
  const SymBandMatrix my = assemble_mass(space_y, quad, DofSet::interior, exec);
  const SymBandMatrix kx = assemble_stiffness(space_x, quad, kappa.kx, DofSet::interior, exec);
  const SymBandMatrix ky = assemble_stiffness(space_y, quad, kappa.ky, DofSet::interior, exec);

  const bool with_softness = cfg.eta != 0.0 || softness_supported(p);
  SymBandMatrix sx, sy;
  if (with_softness) {
    sx = assemble_softness(space_x, kappa.kx);
    sy = assemble_softness(space_y, kappa.ky);
  }
  const bool soft = with_softness && cfg.eta != 0.0;
  const std::size_t bx = soft ? sx.bandwidth() : pb;
  const std::size_t by = soft ? sy.bandwidth() : pb;

  Operators2D ops;
  ops.nx = nx;
  ops.ny = ny;
  ops.gamma0 = shift(spec);
  const double gamma0 = ops.gamma0;

  TensorBandMatrix a(nx, ny, bx, by);
  const Field2D weight = [&spec, gamma0](double x, double y) {
    return shifted_potential(spec, gamma0, x, y);
  };
  if (exec == Execution::serial)
    kernels::serial::add_weighted_mass_2d(a, space_x, space_y, quad_pot, weight);
  else
    kernels::omp::add_weighted_mass_2d(a, space_x, space_y, quad_pot, weight);
  add_kron(a, kx, my, 1.0, exec);
  add_kron(a, mx, ky, 1.0, exec);
  if (soft) {
    add_kron(a, sx, my, -cfg.eta, exec);
    add_kron(a, mx, sy, -cfg.eta, exec);
  }
  ops.stiffness = a.to_sparse();

  TensorBandMatrix m(nx, ny, pb, pb);
  add_kron(m, mx, my, 1.0, exec);
  ops.mass = m.to_sparse();

  if (with_softness) {
    TensorBandMatrix s(nx, ny, sx.bandwidth(), sy.bandwidth());
    add_kron(s, sx, my, 1.0, exec);
    add_kron(s, mx, sy, 1.0, exec);
    ops.softness = s.to_sparse();
  }
  return ops;
}

void write_coordinate(const SparseMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot open '" + path + "' for writing");
  out.precision(17);
  out << "% " << a.rows() << " " << a.cols() << " symmetric lower\n";
  for (int col = 0; col < a.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(a, col); it; ++it) {
      if (it.row() >= it.col())
        out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
    }
  }
}

} // namespace softiga
