#include <doctest.h>

#include <cmath>
#include <random>

#include "softiga/assembly.hpp"
#include "softiga/kernels.hpp"
#include "softiga/mesh.hpp"
#include "softiga/tensor_band_matrix.hpp"

using namespace softiga;

namespace {

double max_rel_difference(std::span<const double> a, std::span<const double> b) {
  double scale = 0.0, diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(a[i]));
    diff = std::max(diff, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? diff / scale : diff;
}

} // namespace

TEST_SUITE("kernels") {
  TEST_CASE("serial and OpenMP 1D products agree") {
    const Field1D w = [](double x) { return 1.0 + std::exp(-x * x); };
    for (int p = 1; p <= 5; ++p) {
      const SplineSpace s(p, graded_mesh({20.0, 200, 0.05}));
      const QuadratureRule q = gauss_rule(p + 4);
      for (int r : {0, 1}) {
        for (DofSet dofs : {DofSet::interior, DofSet::all}) {
          const SymBandMatrix a = kernels::serial::weighted_product_1d(s, q, r, w, dofs);
          const SymBandMatrix b = kernels::omp::weighted_product_1d(s, q, r, w, dofs);
          REQUIRE(a.size() == b.size());
          CHECK(max_rel_difference(a.raw(), b.raw()) <= 1e-14);
        }
      }
    }
  }

  TEST_CASE("serial and OpenMP 2D weighted mass agree") {
    const Field2D w = [](double x, double y) { return 2.0 - std::exp(-x * x - 0.3 * y * y); };
    for (int p : {1, 2, 3}) {
      const SplineSpace sx(p, graded_mesh({5.0, 16, 0.1}));
      const SplineSpace sy(p, uniform_mesh(5.0, 12));
      const QuadratureRule q = gauss_rule(p + 6);
      const auto bp = static_cast<std::size_t>(p);
      TensorBandMatrix a(sx.dimension(), sy.dimension(), bp, bp);
      TensorBandMatrix b(sx.dimension(), sy.dimension(), bp, bp);
      kernels::serial::add_weighted_mass_2d(a, sx, sy, q, w);
      kernels::omp::add_weighted_mass_2d(b, sx, sy, q, w);
      CHECK(max_rel_difference(a.raw(), b.raw()) <= 1e-14);
    }
  }

  TEST_CASE("serial and OpenMP Kronecker accumulation agree") {
    const SplineSpace s(2, uniform_mesh(3.0, 20));
    const QuadratureRule q = gauss_rule(5);
    const SymBandMatrix m = assemble_mass(s, q);
    const SymBandMatrix k = assemble_stiffness(s, q, 0.3);
    const SymBandMatrix soft = assemble_softness(s, 0.3);
    TensorBandMatrix a(m.size(), m.size(), 3, 3), b(m.size(), m.size(), 3, 3);
    for (TensorBandMatrix* t : {&a, &b}) {
      auto add = t == &a ? kernels::serial::add_kron : kernels::omp::add_kron;
      add(*t, k, m, 1.0);
      add(*t, m, k, 1.0);
      add(*t, soft, m, -0.01);
    }
    CHECK(max_rel_difference(a.raw(), b.raw()) == 0.0);
  }

  TEST_CASE("Kronecker accumulation equals the dense product") {
    const SplineSpace sx(1, uniform_mesh(1.0, 6)), sy(2, uniform_mesh(1.0, 5));
    const QuadratureRule q = gauss_rule(5);
    const SymBandMatrix a = assemble_stiffness(sx, q, 1.0);
    const SymBandMatrix b = assemble_mass(sy, q);
    TensorBandMatrix t(a.size(), b.size(), 1, 2);
    kernels::omp::add_kron(t, a, b, 2.5);
    const Eigen::MatrixXd dense = 2.5 * kron_dense(a.to_dense(), b.to_dense());
    const Eigen::MatrixXd got(t.to_sparse());
    CHECK((got - dense).cwiseAbs().maxCoeff() <= 1e-14);
  }

  TEST_CASE("Kronecker products act factor-wise on product vectors") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(4, 4, [&] { return u(rng); });
    const Eigen::MatrixXd b = Eigen::MatrixXd::NullaryExpr(3, 3, [&] { return u(rng); });
    const Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(4, [&] { return u(rng); });
    const Eigen::VectorXd y = Eigen::VectorXd::NullaryExpr(3, [&] { return u(rng); });
    Eigen::VectorXd xy(12), axby(12);
    const Eigen::VectorXd ax = a * x, by = b * y;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) {
        xy(i * 3 + j) = x(i) * y(j);
        axby(i * 3 + j) = ax(i) * by(j);
      }
    CHECK((kron_dense(a, b) * xy - axby).cwiseAbs().maxCoeff() <= 1e-12);
  }

  TEST_CASE("assembly with serial and parallel execution agree") {
    ProblemSpec spec;
    spec.dimension = 2;
    spec.shape = PotentialShape::Gaussian;
    spec.mass_ratio = 20.0;
    spec.beta = 0.344595351;
    const SplineSpace s(2, graded_mesh({20.0, 20, 0.05}));
    AssemblyOptions serial, parallel;
    serial.execution = Execution::serial;
    parallel.execution = Execution::parallel;
    const Operators2D a = assemble_2d(s, s, spec, {1.0 / 1440.0}, serial);
    const Operators2D b = assemble_2d(s, s, spec, {1.0 / 1440.0}, parallel);
    CHECK((Eigen::MatrixXd(a.stiffness) - Eigen::MatrixXd(b.stiffness)).cwiseAbs().maxCoeff() <=
          1e-13);
    CHECK((Eigen::MatrixXd(a.mass) - Eigen::MatrixXd(b.mass)).cwiseAbs().maxCoeff() <= 1e-15);
  }

  TEST_CASE("2D assembled matrices are symmetric") {
    ProblemSpec spec;
    spec.dimension = 2;
    spec.shape = PotentialShape::Gaussian;
    const SplineSpace s(2, graded_mesh({4.0, 10, 0.2}));
    const Operators2D ops = assemble_2d(s, s, spec, {1.0 / 720.0});
    const Eigen::MatrixXd k(ops.stiffness);
    CHECK((k - k.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}
