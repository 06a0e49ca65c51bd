#include <benchmark/benchmark.h>

#include <vector>

#include "rydscale/disorder.hpp"
#include "rydscale/ensemble.hpp"
#include "rydscale/fitting.hpp"
#include "rydscale/hamiltonian.hpp"
#include "rydscale/meanfield.hpp"
#include "rydscale/propagator.hpp"

namespace {

using namespace ryd;

ModelParams model36(double alpha) {
  ModelParams params;
  params.dimension = 3;
  params.interaction_exponent = 6;
  params.alpha = alpha;
  params.delta = 0.0;
  return params;
}

void bm_eos_solve(benchmark::State& state) {
  double alpha = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eos_solve(alpha, -0.3, 3, 6).f_R);
    alpha = alpha < 1e-2 ? alpha * 1.1 : 1e-6;
  }
}
BENCHMARK(bm_eos_solve);

void bm_basis_build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(Basis::build(BasisSpec::truncated(n, 4)).size());
}
BENCHMARK(bm_basis_build)->Arg(12)->Arg(20)->Arg(32);

void bm_hamiltonian_build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AtomConfiguration config = sample_uniform(n, 3, 7);
  for (auto _ : state) {
    const SpinHamiltonian h =
        SpinHamiltonian::build(config, model36(0.05), BasisSpec::truncated(n, 4));
    benchmark::DoNotOptimize(h.dim());
  }
}
BENCHMARK(bm_hamiltonian_build)->Arg(10)->Arg(14);

void bm_propagate_dense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AtomConfiguration config = sample_uniform(n, 3, 11);
  const SpinHamiltonian h =
      SpinHamiltonian::build(config, model36(0.05), BasisSpec::truncated(n, 4));
  const std::vector<double> times = make_time_grid(300.0, 60);
  for (auto _ : state) {
    const SingleTrajectory traj = propagate(h, ground_state(h.basis_ptr()), times);
    benchmark::DoNotOptimize(traj.rydberg_fraction.back());
  }
}
BENCHMARK(bm_propagate_dense)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void bm_fit_saturation(benchmark::State& state) {
  std::vector<double> times, counts;
  for (int i = 1; i <= 60; ++i) {
    times.push_back(0.5 * i);
    counts.push_back(80.0 * (1.0 - std::exp(-4.0 * times.back() / 80.0)));
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_saturation(times, counts).rate);
}
BENCHMARK(bm_fit_saturation);

}  // namespace

BENCHMARK_MAIN();
