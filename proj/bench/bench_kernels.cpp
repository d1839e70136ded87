// Serial reference vs OpenMP kernels on 2D and 3D grids, plus the two Poisson
// backends. Run with OMP_NUM_THREADS to compare thread counts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "divcurl/kernels.hpp"
#include "divcurl/poisson.hpp"

using namespace divcurl;

namespace {

Grid grid_for(const benchmark::State& state) {
  return make_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
}

std::vector<double> smooth(const Grid& g) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point x = g.point(i);
    v[i] = std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]) + x[2];
  }
  return v;
}

void sizes(benchmark::internal::Benchmark* b) {
  b->Args({2, 513})->Args({2, 1025})->Args({3, 65})->Args({3, 129});
}

template <void (*Kernel)(const Grid&, std::span<const double>, std::span<double>)>
void stencil(benchmark::State& state) {
  const Grid g = grid_for(state);
  const std::vector<double> in = smooth(g);
  std::vector<double> out(g.size());
  for (auto _ : state) {
    Kernel(g, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

template <void (*Kernel)(const Grid&, std::span<const double>, int, std::span<double>)>
void difference(benchmark::State& state) {
  const Grid g = grid_for(state);
  const std::vector<double> in = smooth(g);
  std::vector<double> out(g.size());
  for (auto _ : state) {
    Kernel(g, in, 1, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

template <double (*Kernel)(const Grid&, std::span<const double>, const IndexBox&)>
void trapezoid(benchmark::State& state) {
  const Grid g = grid_for(state);
  const std::vector<double> in = smooth(g);
  const IndexBox box = IndexBox::whole(g);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, in, box));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

void poisson(benchmark::State& state, PoissonBackend backend) {
  const Grid g = grid_for(state);
  const ScalarField f(g, smooth(g));
  PoissonOptions opts;
  opts.backend = backend;
  for (auto _ : state) {
    auto s = solve_dirichlet(f, opts);
    benchmark::DoNotOptimize(s.solution.values().data());
  }
}

}  // namespace

BENCHMARK(stencil<reference::laplacian>)->Name("laplacian/serial")->Apply(sizes);
BENCHMARK(stencil<kernels::laplacian>)->Name("laplacian/omp")->Apply(sizes);
BENCHMARK(stencil<reference::dirichlet_apply>)->Name("dirichlet_apply/serial")->Apply(sizes);
BENCHMARK(stencil<kernels::dirichlet_apply>)->Name("dirichlet_apply/omp")->Apply(sizes);
BENCHMARK(difference<reference::first_difference>)->Name("first_difference/serial")->Apply(sizes);
BENCHMARK(difference<kernels::first_difference>)->Name("first_difference/omp")->Apply(sizes);
BENCHMARK(trapezoid<reference::trapezoid_sum>)->Name("trapezoid/serial")->Apply(sizes);
BENCHMARK(trapezoid<kernels::trapezoid_sum>)->Name("trapezoid/omp")->Apply(sizes);
BENCHMARK_CAPTURE(poisson, sine_transform, PoissonBackend::sine_transform)
    ->Args({2, 257})->Args({3, 65})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(poisson, cg, PoissonBackend::conjugate_gradient)
    ->Args({2, 257})->Args({3, 65})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
