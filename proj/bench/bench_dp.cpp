#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "hjlab/dp.hpp"
#include "hjlab/kernel.hpp"
#include "hjlab/potentials.hpp"

using namespace hjlab;

namespace {

const ModelParams kParams(2.0, 1.0);

const Potential& field() {
  static const Potential U = periodic_potential(Profile{Profile::Kind::Cosine, 1.0, 4.0, 0.0}, 1.0);
  return U;
}

GridSpec grid(double dx) {
  GridSpec g;
  g.x_min = -10.0;
  g.x_max = 10.0;
  g.dx = dx;
  g.t1 = 0.0;
  g.t2 = 10.0;
  g.dt = dx / 0.25;
  g.v_max = 6.0;
  return g;
}

double dx_of(const benchmark::State& s) { return 0.2 / static_cast<double>(s.range(0)); }

void cells(benchmark::State& s, const GridSpec& g) {
  s.counters["cells"] = static_cast<double>(g.num_cells() * g.num_steps());
  s.counters["band"] = static_cast<double>(g.band());
}

void BM_DpReference(benchmark::State& s) {
  const GridSpec g = grid(dx_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(solve_dp_reference(*field(), g, [](double) { return 0.0; }, kParams));
  cells(s, g);
}

void BM_DpSerial(benchmark::State& s) {
  const GridSpec g = grid(dx_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(solve_dp(*field(), g, [](double) { return 0.0; }, kParams, Execution::Serial));
  cells(s, g);
}

void BM_DpParallel(benchmark::State& s) {
  const GridSpec g = grid(dx_of(s));
  for (auto _ : s) benchmark::DoNotOptimize(solve_dp(*field(), g, [](double) { return 0.0; }, kParams, Execution::Parallel));
  cells(s, g);
}

void BM_KernelSerial(benchmark::State& s) {
  GridSpec g = grid(dx_of(s));
  g.t2 = 1.0;
  for (auto _ : s) benchmark::DoNotOptimize(kernel(*field(), g, kParams, Execution::Serial));
}

void BM_KernelParallel(benchmark::State& s) {
  GridSpec g = grid(dx_of(s));
  g.t2 = 1.0;
  for (auto _ : s) benchmark::DoNotOptimize(kernel(*field(), g, kParams, Execution::Parallel));
}

}  // namespace

BENCHMARK(BM_DpReference)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DpSerial)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DpParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelParallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
