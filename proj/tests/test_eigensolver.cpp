#include <doctest.h>

#include <cmath>
#include <numbers>

#include "softiga/assembly.hpp"
#include "softiga/eigensolver.hpp"
#include "softiga/error.hpp"
#include "softiga/mesh.hpp"

using namespace softiga;

namespace {

SparseMatrix diagonal(std::initializer_list<double> d) {
  SparseMatrix a(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) {
    a.insert(i, i) = v;
    ++i;
  }
  a.makeCompressed();
  return a;
}

struct Laplace1D {
  SymBandMatrix k, m;
};

// -u'' on (0, pi) with homogeneous Dirichlet data.
Laplace1D laplace(int p, std::size_t n) {
  const std::vector<double> bp = [n] {
    std::vector<double> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      v[i] = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    return v;
  }();
  const SplineSpace s(p, Mesh1D(bp));
  const QuadratureRule q = gauss_rule(p + 2);
  return {assemble_stiffness(s, q, 1.0), assemble_mass(s, q)};
}

Operators1D two_body(int p, std::size_t n, double eta) {
  ProblemSpec spec;
  spec.beta = 5.0;
  return assemble_1d(SplineSpace(p, uniform_mesh(20.0, n)), spec, {eta});
}

} // namespace

TEST_SUITE("eigensolver") {
  TEST_CASE("diagonal pencil") {
    const SparseMatrix k = diagonal({6.0, 2.0}), m = diagonal({1.0, 1.0});
    const EigenResult r = solve_smallest(k, m, 2, 0.0);
    CHECK(r.eigenvalues[0] == doctest::Approx(2.0));
    CHECK(r.eigenvalues[1] == doctest::Approx(6.0));
    CHECK(std::abs(r.vectors(1, 0)) == doctest::Approx(1.0));
    CHECK(r.dense);
  }

  TEST_CASE("linear elements reproduce the discrete dispersion relation") {
    const std::size_t n = 64;
    const double h = std::numbers::pi / static_cast<double>(n);
    const Laplace1D op = laplace(1, n);
    const EigenResult r = solve_smallest(op.k, op.m, 5, 0.0);
    for (int j = 1; j <= 5; ++j) {
      const double jh = j * h;
      const double exact = 6.0 / (h * h) * (1.0 - std::cos(jh)) / (2.0 + std::cos(jh));
      CHECK(r.eigenvalues[j - 1] == doctest::Approx(exact).epsilon(1e-12));
    }
  }

  TEST_CASE("Galerkin eigenvalues bound j^2 from above") {
    for (int p : {1, 2, 3}) {
      const Laplace1D op = laplace(p, 40);
      const EigenResult r = solve_smallest(op.k, op.m, 4, 0.0);
      for (int j = 1; j <= 4; ++j)
        CHECK(r.eigenvalues[j - 1] >= j * j * (1.0 - 1e-12));
    }
  }

  TEST_CASE("dense and Lanczos paths agree") {
    for (int p : {1, 2}) {
      const Operators1D ops = two_body(p, 300, p == 1 ? 1.0 / 12.0 : 1.0 / 720.0);
      SolverOptions dense, lanczos;
      lanczos.dense_threshold = 0;
      const EigenResult a = solve_smallest(ops.stiffness, ops.mass, 4, ops.gamma0, dense);
      const EigenResult b = solve_smallest(ops.stiffness, ops.mass, 4, ops.gamma0, lanczos);
      CHECK(a.dense);
      CHECK_FALSE(b.dense);
      CHECK(b.iterations > 0);
      for (int j = 0; j < 4; ++j)
        CHECK(b.shifted[j] == doctest::Approx(a.shifted[j]).epsilon(1e-10));
      for (int j = 0; j < 4; ++j)
        CHECK(std::abs(a.vectors.col(j).dot(b.vectors.col(j))) > 0.0);
    }
  }

  TEST_CASE("eigenvectors are M-orthonormal with small residuals") {
    const Operators1D ops = two_body(2, 800, 1.0 / 720.0);
    const EigenResult r = solve_smallest(ops.stiffness, ops.mass, 3, ops.gamma0);
    CHECK_FALSE(r.dense);
    const Eigen::MatrixXd mv = ops.mass.to_sparse() * r.vectors;
    const Eigen::MatrixXd gram = r.vectors.transpose() * mv;
    CHECK((gram - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
    for (double res : r.residuals)
      CHECK(res <= 1e-10 * r.stiffness_norm);
    for (std::size_t j = 1; j < r.eigenvalues.size(); ++j)
      CHECK(r.eigenvalues[j] >= r.eigenvalues[j - 1]);
  }

  TEST_CASE("physical eigenvalues do not depend on the shift") {
    ProblemSpec a, b;
    a.beta = b.beta = 5.0;
    b.gamma0 = 40.0;
    const SplineSpace s(2, uniform_mesh(20.0, 600));
    const Operators1D oa = assemble_1d(s, a, {1.0 / 720.0});
    const Operators1D ob = assemble_1d(s, b, {1.0 / 720.0});
    const EigenResult ra = solve_smallest(oa.stiffness, oa.mass, 2, oa.gamma0);
    const EigenResult rb = solve_smallest(ob.stiffness, ob.mass, 2, ob.gamma0);
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(ra.eigenvalues[j] - rb.eigenvalues[j]) <= 1e-9);
  }

  TEST_CASE("largest-magnitude entry of every vector is positive") {
    const Operators1D ops = two_body(1, 200, 0.0);
    const EigenResult r = solve_smallest(ops.stiffness, ops.mass, 3, ops.gamma0);
    for (Eigen::Index j = 0; j < r.vectors.cols(); ++j) {
      Eigen::Index at = 0;
      r.vectors.col(j).cwiseAbs().maxCoeff(&at);
      CHECK(r.vectors(at, j) > 0.0);
    }
  }

  TEST_CASE("softening lowers every eigenvalue") {
    double previous[2] = {1e300, 1e300};
    for (double eta : {0.0, 0.02, 0.05, 1.0 / 12.0}) {
      const Operators1D ops = two_body(1, 40, eta);
      const EigenResult r = solve_smallest(ops.stiffness, ops.mass, 2, ops.gamma0);
      for (int j = 0; j < 2; ++j) {
        CHECK(r.eigenvalues[j] <= previous[j]);
        previous[j] = r.eigenvalues[j];
      }
    }
  }

  TEST_CASE("oversized softness is reported on both paths") {
    const Operators1D ops = two_body(1, 20, 10.0);
    SolverOptions lanczos;
    lanczos.dense_threshold = 0;
    CHECK_THROWS_AS(solve_smallest(ops.stiffness, ops.mass, 2, ops.gamma0), SoftnessTooLarge);
    CHECK_THROWS_AS(solve_smallest(ops.stiffness, ops.mass, 2, ops.gamma0, lanczos),
                    SoftnessTooLarge);
  }

  TEST_CASE("singular mass is reported") {
    const SparseMatrix k = diagonal({1.0, 2.0, 3.0}), m = diagonal({1.0, 0.0, 1.0});
    SolverOptions lanczos;
    lanczos.dense_threshold = 0;
    CHECK_THROWS_AS(solve_smallest(k, m, 1, 0.0), SingularMass);
    CHECK_THROWS_AS(solve_smallest(k, m, 1, 0.0, lanczos), SingularMass);
  }

  TEST_CASE("step cap yields NoConvergence") {
    const Operators1D ops = two_body(2, 800, 0.0);
    SolverOptions opts;
    opts.max_iterations = 2;
    CHECK_THROWS_AS(solve_smallest(ops.stiffness, ops.mass, 2, ops.gamma0, opts), NoConvergence);
  }

  TEST_CASE("invalid requests") {
    const SparseMatrix k = diagonal({1.0, 2.0}), m = diagonal({1.0, 1.0});
    CHECK_THROWS_AS(solve_smallest(k, m, 0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(solve_smallest(k, m, 3, 0.0), InvalidArgument);
    const SparseMatrix m3 = diagonal({1.0, 1.0, 1.0});
    CHECK_THROWS_AS(solve_smallest(k, m3, 1, 0.0), InvalidArgument);
  }

  TEST_CASE("eigenvalue errors") {
    const std::vector<double> computed{-2.9148964}, reference{-2.9149186, -0.25};
    const auto e = eigen_error(computed, reference);
    REQUIRE(e.size() == 1);
    CHECK(e[0].error == doctest::Approx(2.22e-5).epsilon(1e-4));
    CHECK(e[0].index == 0);
    const std::vector<double> too_long{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(eigen_error(too_long, reference), InvalidArgument);
  }

  TEST_CASE("high-order run reproduces the two-body reference") {
    const Operators1D ops = two_body(5, 2000, 0.0);
    const EigenResult r = solve_smallest(ops.stiffness, ops.mass, 2, ops.gamma0);
    CHECK(std::abs(r.eigenvalues[0] - -2.91491856302211) <= 1e-8);
    CHECK(std::abs(r.eigenvalues[1] - -0.25417134380183) <= 1e-8);
  }
}
