// Serial reference loop against the OpenMP kernels on the same requests.

#include <benchmark/benchmark.h>

#include <vector>

#include "rsn/kernels.hpp"
#include "rsn/parallel.hpp"
#include "rsn/stats.hpp"

using namespace rsn;

namespace {

ScaledRequest request(Regime regime, std::size_t replicates) {
  LimitSpec spec;
  spec.regime = regime;
  spec.law = IncrementLaw::exponential(1.0);
  spec.h = ResponseFunction::power_decay(0.25, 1.0);
  spec.beta = 0.25;
  ScaledRequest req;
  req.spec = spec;
  req.u = {0.5, 1.0, 2.0};
  req.t = 1000.0;
  req.replicates = replicates;
  req.seed = 11;
  req.tag = 0x100;
  req.max_shots = 1e12;
  return req;
}

void BM_ScaledSerial(benchmark::State& state) {
  const ScaledRequest req = request(Regime::A1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_scaled_serial(req));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScaledParallel(benchmark::State& state) {
  const ScaledRequest req = request(Regime::A1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_scaled(req, Execution::Parallel));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<Point2> cloud(std::size_t n, std::uint64_t seed) {
  Stream stream(seed, StreamId{0x900, 0});
  std::vector<Point2> out(n);
  for (Point2& p : out) p = {stream.normal(), stream.normal()};
  return out;
}

void energy(benchmark::State& state, Execution exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = cloud(n, 1);
  const auto y = cloud(n, 2);
  for (auto _ : state) {
    Stream stream(3, StreamId{0x400, 0});
    benchmark::DoNotOptimize(energy_distance_test(x, y, 99, stream, exec));
  }
}

void BM_EnergySerial(benchmark::State& state) { energy(state, Execution::Serial); }
void BM_EnergyParallel(benchmark::State& state) { energy(state, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_ScaledSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScaledParallel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnergySerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyParallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
