#pragma once

#include <Eigen/Dense>

#include "softiga/problem.hpp"
#include "softiga/quadrature.hpp"
#include "softiga/spline_space.hpp"

namespace softiga::testing {

// Direct tensor-product quadrature of the 2D bilinear forms, element by element.
struct Brute2D {
  Eigen::MatrixXd stiffness;
  Eigen::MatrixXd mass;
};

inline Brute2D brute_force_2d(const SplineSpace& sx, const SplineSpace& sy, const ProblemSpec& spec,
                       int q, int q_pot, bool laplacian = true) {
  const std::size_t nx = sx.dimension(), ny = sy.dimension();
  Brute2D b{Eigen::MatrixXd::Zero(nx * ny, nx * ny), Eigen::MatrixXd::Zero(nx * ny, nx * ny)};
  const DiffusionCoeffs kappa = diffusion(spec);
  const double g0 = shift(spec);
  auto integrate = [&](int order, bool potential) {
    const QuadratureRule rule = gauss_rule(order);
    for (std::size_t ex = 0; ex < sx.num_elements(); ++ex) {
      const double ax = sx.mesh().breakpoint(ex), bx = sx.mesh().breakpoint(ex + 1);
      for (std::size_t ey = 0; ey < sy.num_elements(); ++ey) {
        const double ay = sy.mesh().breakpoint(ey), by = sy.mesh().breakpoint(ey + 1);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double x = 0.5 * (ax + bx) + 0.5 * (bx - ax) * rule.nodes[i];
          for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double y = 0.5 * (ay + by) + 0.5 * (by - ay) * rule.nodes[j];
            const double w = 0.25 * (bx - ax) * (by - ay) * rule.weights[i] * rule.weights[j];
            const auto vx = sx.eval_basis(x, 0), dx = sx.eval_basis(x, 1);
            const auto vy = sy.eval_basis(y, 0), dy = sy.eval_basis(y, 1);
            for (std::size_t a = 0; a < vx.size(); ++a) {
              const auto ia = sx.interior_index(vx[a].first);
              if (!ia)
                continue;
              for (std::size_t c = 0; c < vy.size(); ++c) {
                const auto ic = sy.interior_index(vy[c].first);
                if (!ic)
                  continue;
                const std::size_t row = *ia * ny + *ic;
                for (std::size_t a2 = 0; a2 < vx.size(); ++a2) {
                  const auto ja = sx.interior_index(vx[a2].first);
                  if (!ja)
                    continue;
                  for (std::size_t c2 = 0; c2 < vy.size(); ++c2) {
                    const auto jc = sy.interior_index(vy[c2].first);
                    if (!jc)
                      continue;
                    const std::size_t col = *ja * ny + *jc;
                    const double phi = vx[a].second * vy[c].second;
                    const double psi = vx[a2].second * vy[c2].second;
                    if (potential) {
                      b.stiffness(row, col) +=
                          w * shifted_potential(spec, g0, x, y) * phi * psi;
                    } else {
                      b.stiffness(row, col) +=
                          w * (kappa.kx * dx[a].second * vy[c].second * dx[a2].second *
                                   vy[c2].second +
                               kappa.ky * vx[a].second * dy[c].second * vx[a2].second *
                                   dy[c2].second);
                      b.mass(row, col) += w * phi * psi;
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  };
  if (laplacian)
    integrate(q, false);
  integrate(q_pot, true);
  return b;
}

} // namespace softiga::testing
