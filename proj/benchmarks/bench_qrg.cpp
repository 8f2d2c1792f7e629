#include <benchmark/benchmark.h>

#include "qrg/exact_diag.hpp"
#include "qrg/measures.hpp"
#include "qrg/rg_flow.hpp"
#include "qrg/scaling.hpp"

using namespace qrg;

static void BM_GroundState(benchmark::State& state) {
  const auto& model = lattice(kAllLattices[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(cluster_ground_state(model, 0.7).energy);
  state.SetLabel(std::string(lattice_name(model.kind)));
}
BENCHMARK(BM_GroundState)->DenseRange(0, 2);

static void BM_MeasureSet(benchmark::State& state) {
  const auto& model = lattice(kAllLattices[static_cast<std::size_t>(state.range(0))]);
  const auto ground = cluster_ground_state(model, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(measure_set(ground, model.node_site).tau);
  state.SetLabel(std::string(lattice_name(model.kind)));
}
BENCHMARK(BM_MeasureSet)->DenseRange(0, 2);

static void BM_Sweep(benchmark::State& state) {
  const auto& model = lattice(LatticeKind::Triangular);
  const auto w = fixed_window(critical_data(model));
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep(model, Measure::Tau, 6, w.lo, w.hi, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Sweep)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_CriticalData(benchmark::State& state) {
  const auto& model = lattice(LatticeKind::SierpinskiPyramid);
  for (auto _ : state) benchmark::DoNotOptimize(critical_data(model).nu);
}
BENCHMARK(BM_CriticalData);
BENCHMARK_MAIN();
