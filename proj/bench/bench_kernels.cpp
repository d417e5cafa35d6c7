// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS to vary the
// thread count; results are bit-identical either way.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "pitcast/kernels.hpp"
#include "pitcast/math_kernel.hpp"

namespace {

using namespace pitcast;
using namespace pitcast::kernels;

std::vector<double> random_pds(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pd(1e-4, 0.3);
  std::vector<double> v(n);
  for (auto& x : v) x = pd(rng);
  return v;
}

std::vector<double> barriers_for(std::size_t n) {
  auto v = random_pds(n, 1);
  for (auto& x : v) x = std_normal_quantile(Probability(x));
  return v;
}

template <bool Parallel>
void BM_ExpectedDefaults(benchmark::State& state) {
  const auto barriers = barriers_for(static_cast<std::size_t>(state.range(0)));
  const auto l = Loadings::from_rho(0.15);
  for (auto _ : state) {
    double s = Parallel ? parallel::expected_defaults(barriers, -1.0, l)
                        : serial::expected_defaults(barriers, -1.0, l);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_DefaultLogLikelihood(benchmark::State& state) {
  const auto nodes_n = static_cast<std::size_t>(state.range(0));
  std::vector<double> nodes(nodes_n), out(nodes_n);
  for (std::size_t i = 0; i < nodes_n; ++i)
    nodes[i] = -8.0 + 16.0 * static_cast<double>(i) / static_cast<double>(nodes_n - 1);
  const double barrier = std_normal_quantile(Probability(0.03));
  const auto l = Loadings::from_rho(0.15);
  for (auto _ : state) {
    if constexpr (Parallel)
      parallel::default_log_likelihood(nodes, 100000, 20000, barrier, l, out);
    else
      serial::default_log_likelihood(nodes, 100000, 20000, barrier, l, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_ForwardPitMatrix(benchmark::State& state) {
  constexpr std::size_t kHorizons = 30;
  const auto obligors = static_cast<std::size_t>(state.range(0));
  const auto ttc = random_pds(obligors * kHorizons, 2);
  std::vector<NormalMoments> moments(kHorizons);
  for (std::size_t h = 0; h < kHorizons; ++h) {
    const double a = std::pow(0.8, static_cast<double>(h + 1));
    moments[h] = {-1.5 * a, 1.0 - a * a};
  }
  std::vector<double> out(ttc.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      parallel::forward_pit_matrix(ttc, kHorizons, moments, 0.15, out);
    else
      serial::forward_pit_matrix(ttc, kHorizons, moments, 0.15, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ttc.size()));
}

BENCHMARK(BM_ExpectedDefaults<false>)->Name("expected_defaults/serial")->Arg(10'000)->Arg(1'000'000);
BENCHMARK(BM_ExpectedDefaults<true>)->Name("expected_defaults/parallel")->Arg(10'000)->Arg(1'000'000);
BENCHMARK(BM_DefaultLogLikelihood<false>)->Name("default_log_likelihood/serial")->Arg(4001)->Arg(100'001);
BENCHMARK(BM_DefaultLogLikelihood<true>)->Name("default_log_likelihood/parallel")->Arg(4001)->Arg(100'001);
BENCHMARK(BM_ForwardPitMatrix<false>)->Name("forward_pit_matrix/serial")->Arg(1'000)->Arg(100'000);
BENCHMARK(BM_ForwardPitMatrix<true>)->Name("forward_pit_matrix/parallel")->Arg(1'000)->Arg(100'000);

}  // namespace

BENCHMARK_MAIN();
