#include <benchmark/benchmark.h>

#include <random>

#include "hyperref/findim/algebra.hpp"
#include "hyperref/findim/multilinear.hpp"
#include "hyperref/kernels.hpp"

namespace {

using namespace hyperref;

std::vector<kernels::Term> random_terms(std::int64_t count) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<kernels::Term> terms;
  for (std::int64_t n = -count / 2; n < count - count / 2; ++n) terms.push_back({n, {g(rng), g(rng)}});
  return terms;
}

template <auto Kernel>
void BM_grid(benchmark::State& state) {
  const auto terms = random_terms(state.range(0));
  const std::int64_t grid = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(terms, grid));
  state.SetItemsProcessed(state.iterations() * grid);
}

template <auto Kernel>
void BM_coboundary(benchmark::State& state) {
  const auto alg = findim::matrix_algebra(2);
  const auto x = findim::regular_bimodule(alg);
  std::mt19937_64 rng(11);
  const int n = static_cast<int>(state.range(0));
  const auto t = findim::MultilinearMap::random(n, alg.dim, x.dim, rng);
  const kernels::CoboundaryOperands ops{n, alg.left_mult, x.left, x.right};
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(ops, t.tensor));
}

}  // namespace

BENCHMARK(BM_grid<kernels::serial::evaluate_on_grid>)->Name("grid/serial")->Args({512, 2048})->Args({4096, 4096});
BENCHMARK(BM_grid<kernels::parallel::evaluate_on_grid>)->Name("grid/parallel")->Args({512, 2048})->Args({4096, 4096});
BENCHMARK(BM_coboundary<kernels::serial::apply_coboundary>)->Name("coboundary/serial")->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(BM_coboundary<kernels::parallel::apply_coboundary>)->Name("coboundary/parallel")->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
