// Microbenchmarks for the analysis and integration hot paths.  Not part of
// the test suite; run build/benchmarks/cvfnn_bench directly.

#include <benchmark/benchmark.h>

#include <array>
#include <random>
#include <vector>

#include "cvfnn/hub.hpp"
#include "cvfnn/ring.hpp"
#include "cvfnn/simulate.hpp"

namespace {

using namespace cvfnn;

/// Uniform three-neuron ring: diagonal 1-2i, forward 1+i, backward i,
/// a = 1, activations z/(1+|z|).
NetworkSpec ring3() {
  NetworkSpec spec;
  spec.n = 3;
  spec.a = RealVector::Ones(3);
  spec.T = ComplexMatrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) {
    spec.T(j, j) = Complex{1.0, -2.0};
    spec.T(j, (j + 1) % 3) = Complex{1.0, 1.0};
    spec.T(j, (j + 2) % 3) = Complex{0.0, 1.0};
  }
  spec.activations.assign(3, ActivationSpec::georgiou(1.0, 1.0));
  spec.inputs = ComplexVector::Zero(3);
  return spec;
}

std::vector<std::array<Complex, 3>> random_triples(std::size_t count) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> box(-5.0, 5.0);
  auto draw = [&]() { return Complex{box(rng), box(rng)}; };
  std::vector<std::array<Complex, 3>> triples;
  triples.reserve(count);
  while (triples.size() < count) {
    const Complex alpha = draw();
    const Complex beta = draw();
    const Complex gamma = draw();
    if (std::abs(alpha * beta - gamma) < 1e-6) continue;
    triples.push_back({alpha, beta, gamma});
  }
  return triples;
}

void BM_Lemma1RootArgs(benchmark::State& state) {
  const auto triples = random_triples(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [alpha, beta, gamma] = triples[i];
    benchmark::DoNotOptimize(lemma1_root_args(alpha, beta, gamma));
    i = (i + 1) % triples.size();
  }
}
BENCHMARK(BM_Lemma1RootArgs);

void BM_HubCriticalOrder(benchmark::State& state) {
  HubCoefficients c;
  c.alpha = Complex{1.0, -5.0};
  c.beta = Complex{-1.0, 1.0};
  c.gamma = Complex{-3.0, -4.0};
  c.n = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hub_critical_order(c));
  }
}
BENCHMARK(BM_HubCriticalOrder);

void BM_EigComplex(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = Complex{box(rng), box(rng)};
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_complex(m));
  }
}
BENCHMARK(BM_EigComplex)->RangeMultiplier(4)->Range(4, 64);

void BM_CirculantEigenvalues(benchmark::State& state) {
  RingCoefficients rc;
  rc.alpha = Complex{-1.0, 0.0};
  rc.beta = Complex{0.6, 0.8};
  rc.gamma = Complex{0.0, 1.0};
  rc.n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(circulant_eigenvalues(rc));
  }
}
BENCHMARK(BM_CirculantEigenvalues)->RangeMultiplier(8)->Range(8, 512);

void BM_DensityScan(benchmark::State& state) {
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(density_scan(5, resolution, 1));
  }
  state.SetItemsProcessed(state.iterations() * resolution * resolution);
}
BENCHMARK(BM_DensityScan)->Arg(32)->Arg(64);

void BM_AbmSimulate(benchmark::State& state) {
  const auto steps = state.range(0);
  const NetworkSpec spec = ring3();
  const ComplexVector z0 = ComplexVector::Constant(3, Complex{0.01, 0.01});
  SimConfig config;
  config.q = 0.8;
  config.h = 0.01;
  config.t_end = config.h * static_cast<double>(steps);
  for (auto _ : state) {
    benchmark::DoNotOptimize(abm_simulate(spec, z0, config));
  }
  state.SetComplexityN(steps);
}
BENCHMARK(BM_AbmSimulate)
    ->RangeMultiplier(2)
    ->Range(1000, 8000)
    ->Complexity(benchmark::oNSquared);

void BM_AbmSimulateWindowed(benchmark::State& state) {
  const auto steps = state.range(0);
  const NetworkSpec spec = ring3();
  const ComplexVector z0 = ComplexVector::Constant(3, Complex{0.01, 0.01});
  SimConfig config;
  config.q = 0.8;
  config.h = 0.01;
  config.t_end = config.h * static_cast<double>(steps);
  config.memory_window = 256;
  for (auto _ : state) {
    benchmark::DoNotOptimize(abm_simulate(spec, z0, config));
  }
  state.SetComplexityN(steps);
}
BENCHMARK(BM_AbmSimulateWindowed)
    ->RangeMultiplier(2)
    ->Range(1000, 8000)
    ->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
