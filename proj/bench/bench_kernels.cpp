// Serial references against the OpenMP kernels: exact enumeration and
// independent sampler chains.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "fklab/events.hpp"
#include "fklab/exact.hpp"
#include "fklab/sampler.hpp"

using namespace fklab;

namespace {

void enumerate_torus(benchmark::State& state, Execution execution) {
  const Lattice t = build_lattice(Family::SquareTorus, 3);
  const Event ch = crossing_event(t, {0, 2, 0, 2}, Direction::Horizontal);
  ExactOptions opt;
  opt.execution = execution;
  for (auto _ : state)
    benchmark::DoNotOptimize(event_probability(t, BoundaryCondition::periodic(), {0.5857864376269049, 2.0}, ch, opt));
  state.counters["configs"] = benchmark::Counter(static_cast<double>(std::uint64_t{1} << t.edge_count()),
                                                 benchmark::Counter::kIsIterationInvariantRate);
}

void chains(benchmark::State& state, int threads) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  const Lattice t = build_lattice(Family::SquareTorus, static_cast<int>(state.range(0)));
  const Observable ch = indicator(crossing_event(t, {0, 4, 0, 4}, Direction::Horizontal));
  SamplerOptions opt;
  opt.chains = 8;
  opt.sweeps = 2000;
  opt.burn_in = 100;
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate(t, BoundaryCondition::periodic(), {0.5857864376269049, 2.0}, ch, opt).mean);
  state.counters["steps"] = benchmark::Counter(8.0 * 2000.0, benchmark::Counter::kIsIterationInvariantRate);
  omp_set_num_threads(saved);
}

}  // namespace

BENCHMARK_CAPTURE(enumerate_torus, serial, Execution::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(enumerate_torus, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(chains, serial, 1)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(chains, parallel, omp_get_num_procs())->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
