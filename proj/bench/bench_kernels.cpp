#include <cmath>

#include <benchmark/benchmark.h>

#include "softiga/assembly.hpp"
#include "softiga/kernels.hpp"
#include "softiga/mesh.hpp"

using namespace softiga;

namespace {

const Field1D kWeight1D = [](double x) { return 1.0 + 5.0 / std::pow(1.0 + x * x, 1.5); };
const Field2D kWeight2D = [](double x, double y) {
  return 2.0 - std::exp(-(x + 0.5 * y) * (x + 0.5 * y)) - std::exp(-(x - 0.5 * y) * (x - 0.5 * y));
};

template <auto Kernel>
void weighted_product_1d(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const SplineSpace s(p, uniform_mesh(20.0, static_cast<std::size_t>(state.range(1))));
  const QuadratureRule q = gauss_rule(default_potential_quad_order(p));
  for (auto _ : state)
    benchmark::DoNotOptimize(Kernel(s, q, 0, kWeight1D, DofSet::interior));
}

template <auto Kernel>
void weighted_mass_2d(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const SplineSpace s(p, graded_mesh({20.0, static_cast<std::size_t>(state.range(1)), 0.05}));
  const QuadratureRule q = gauss_rule(default_potential_quad_order(p));
  const auto b = static_cast<std::size_t>(p);
  for (auto _ : state) {
    TensorBandMatrix out(s.dimension(), s.dimension(), b, b);
    Kernel(out, s, s, q, kWeight2D);
    benchmark::DoNotOptimize(out.raw().data());
  }
}

template <auto Kernel>
void kron(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const SplineSpace s(p, uniform_mesh(20.0, static_cast<std::size_t>(state.range(1))));
  const QuadratureRule q = gauss_rule(p + 3);
  const SymBandMatrix k = assemble_stiffness(s, q, 0.5);
  const SymBandMatrix m = assemble_mass(s, q);
  const auto b = static_cast<std::size_t>(p);
  for (auto _ : state) {
    TensorBandMatrix out(m.size(), m.size(), b, b);
    Kernel(out, k, m, 1.0);
    Kernel(out, m, k, 1.0);
    benchmark::DoNotOptimize(out.raw().data());
  }
}

void args_1d(benchmark::internal::Benchmark* b) {
  for (int p : {1, 2, 5})
    for (int n : {400, 4000})
      b->Args({p, n});
}

void args_2d(benchmark::internal::Benchmark* b) {
  for (int p : {1, 2})
    for (int n : {40, 80})
      b->Args({p, n});
}

} // namespace

BENCHMARK(weighted_product_1d<kernels::serial::weighted_product_1d>)->Apply(args_1d);
BENCHMARK(weighted_product_1d<kernels::omp::weighted_product_1d>)->Apply(args_1d)->UseRealTime();
BENCHMARK(weighted_mass_2d<kernels::serial::add_weighted_mass_2d>)->Apply(args_2d);
BENCHMARK(weighted_mass_2d<kernels::omp::add_weighted_mass_2d>)->Apply(args_2d)->UseRealTime();
BENCHMARK(kron<kernels::serial::add_kron>)->Apply(args_2d);
BENCHMARK(kron<kernels::omp::add_kron>)->Apply(args_2d)->UseRealTime();

BENCHMARK_MAIN();
