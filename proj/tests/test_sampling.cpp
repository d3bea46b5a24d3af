#include <doctest.h>

#include <cmath>
#include <vector>

#include "softiga/assembly.hpp"
#include "softiga/eigensolver.hpp"
#include "softiga/error.hpp"
#include "softiga/mesh.hpp"
#include "softiga/sampling.hpp"

using namespace softiga;

TEST_SUITE("sampling") {
  TEST_CASE("zero coefficients sample to zero") {
    const SplineSpace s(2, uniform_mesh(3.0, 12));
    const std::vector<double> c(s.dimension(), 0.0);
    const std::vector<double> grid{-3.0, -1.0, 0.0, 2.5, 3.0};
    for (double v : sample_eigenfunction(s, c, grid))
      CHECK(v == 0.0);
  }

  TEST_CASE("eigenfunctions vanish on the boundary and have unit L2 norm") {
    ProblemSpec spec;
    spec.beta = 5.0;
    const SplineSpace s(2, uniform_mesh(20.0, 400));
    const Operators1D ops = assemble_1d(s, spec, {1.0 / 720.0});
    const EigenResult r = solve_smallest(ops.stiffness, ops.mass, 2, ops.gamma0);
    for (Eigen::Index j = 0; j < 2; ++j) {
      const std::vector<double> c(r.vectors.col(j).data(), r.vectors.col(j).data() + r.vectors.rows());
      const std::vector<double> ends{-20.0, 20.0};
      for (double v : sample_eigenfunction(s, c, ends))
        CHECK(std::abs(v) <= 1e-14);
      // Composite Simpson on a grid unrelated to the mesh.
      const std::size_t m = 20000;
      std::vector<double> grid(m + 1);
      for (std::size_t i = 0; i <= m; ++i)
        grid[i] = -20.0 + 40.0 * static_cast<double>(i) / static_cast<double>(m);
      const std::vector<double> u = sample_eigenfunction(s, c, grid);
      double sum = 0.0;
      for (std::size_t i = 0; i <= m; ++i) {
        const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * u[i] * u[i];
      }
      CHECK(sum * (40.0 / m) / 3.0 == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("separable coefficients sample to the product") {
    const SplineSpace sx(2, graded_mesh({2.0, 8, 0.3})), sy(1, uniform_mesh(1.5, 6));
    std::vector<double> a(sx.dimension()), b(sy.dimension()), c;
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] = std::cos(0.7 * static_cast<double>(i));
    for (std::size_t i = 0; i < b.size(); ++i)
      b[i] = 1.0 + 0.1 * static_cast<double>(i * i);
    for (double ai : a)
      for (double bi : b)
        c.push_back(ai * bi);
    const std::vector<std::pair<double, double>> grid{{0.0, 0.0}, {-1.3, 0.4}, {1.9, -1.1}, {2.0, 0.3}};
    const std::vector<double> got = sample_eigenfunction(sx, sy, c, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(got[i] == doctest::Approx(sx.evaluate(a, grid[i].first) * sy.evaluate(b, grid[i].second))
                          .epsilon(1e-13)
                          .scale(1.0));
  }

  TEST_CASE("invalid input") {
    const SplineSpace s(2, uniform_mesh(1.0, 4));
    const std::vector<double> c(s.dimension(), 1.0), wrong(2, 1.0);
    const std::vector<double> outside{1.5};
    CHECK_THROWS_AS(sample_eigenfunction(s, c, outside), InvalidArgument);
    const std::vector<double> inside{0.0};
    CHECK_THROWS_AS(sample_eigenfunction(s, wrong, inside), InvalidArgument);
    const std::vector<std::pair<double, double>> grid{{0.0, 0.0}};
    CHECK_THROWS_AS(sample_eigenfunction(s, s, c, grid), InvalidArgument);
  }
}
