#pragma once

#include <cstddef>
#include <string>

#include "softiga/band_matrix.hpp"
#include "softiga/kernels.hpp"
#include "softiga/problem.hpp"
#include "softiga/quadrature.hpp"
#include "softiga/spline_space.hpp"

namespace softiga {

/// Softness parameter eta of K~ = K - eta S. Admissibility (eta < eta_max) is
/// only known once K~ is factorized.
struct SoftnessConfig {
  double eta = 0.0;
};

/// Quadrature and resource knobs of an assembly. Orders of 0 select the defaults.
struct AssemblyOptions {
  int quad_order = 0;            // default p + 3
  int quad_order_potential = 0;  // default default_potential_quad_order(p)
  std::size_t max_unknowns = 400000;
  Execution execution = Execution::parallel;
};

int default_quad_order(int degree);
int default_potential_quad_order(int degree);

/// M_kl = int phi_k phi_l.
SymBandMatrix assemble_mass(const SplineSpace& space, const QuadratureRule& quad,
                            DofSet dofs = DofSet::interior,
                            Execution exec = Execution::parallel);

/// K_kl = kappa int phi_k' phi_l'.
SymBandMatrix assemble_stiffness(const SplineSpace& space, const QuadratureRule& quad,
                                 double kappa, DofSet dofs = DofSet::interior,
                                 Execution exec = Execution::parallel);

/// Q_kl = int w phi_k phi_l.
SymBandMatrix assemble_potential(const SplineSpace& space, const QuadratureRule& quad,
                                 const Field1D& weight, DofSet dofs = DofSet::interior,
                                 Execution exec = Execution::parallel);

/// Jump penalty S_kl = sum_F c_F h_F^(2p-1) kappa [phi_k^(p)] [phi_l^(p)].
///
/// c_F = 1 on interior faces; on boundary faces c_F = 2 for even p and 0 for
/// odd p. h_F is the mean of the two adjacent element sizes (the single
/// adjacent size on a boundary face). Only p in {1, 2} is supported.
SymBandMatrix assemble_softness(const SplineSpace& space, double kappa,
                                DofSet dofs = DofSet::interior);

/// K - eta S.
SymBandMatrix soft_stiffness(const SymBandMatrix& k, const SymBandMatrix& s, SoftnessConfig cfg);

/// Matrices of the 1D problem. `stiffness` is the full softened operator
/// K + Q - eta S whose generalized eigenvalues are lambda + gamma0.
struct Operators1D {
  SymBandMatrix stiffness;
  SymBandMatrix mass;
  SymBandMatrix softness;  // empty when eta == 0 and p > 2
  double gamma0 = 0.0;
};

Operators1D assemble_1d(const SplineSpace& space, const ProblemSpec& spec,
                        SoftnessConfig cfg, const AssemblyOptions& opts = {});

/// Matrices of the 2D problem on the tensor space (index ix * Ny + iy):
///   stiffness = Kx kron My + Mx kron Ky + Q - eta (Sx kron My + Mx kron Sy)
///   mass      = Mx kron My
/// Directional K and S carry kappa_x / kappa_y; all potential content is in Q,
/// assembled by tensor Gauss quadrature of gamma0 - gamma(x, y).
struct Operators2D {
  SparseMatrix stiffness;
  SparseMatrix mass;
  SparseMatrix softness;  // empty when eta == 0 and p > 2
  std::size_t nx = 0;
  std::size_t ny = 0;
  double gamma0 = 0.0;
};

Operators2D assemble_2d(const SplineSpace& space_x, const SplineSpace& space_y,
                        const ProblemSpec& spec, SoftnessConfig cfg,
                        const AssemblyOptions& opts = {});

/// Writes "row col value" lines (1-based indices, lower triangle) for debugging.
void write_coordinate(const SparseMatrix& a, const std::string& path);

} // namespace softiga
