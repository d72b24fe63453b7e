#include <benchmark/benchmark.h>

#include <memory>

#include "cobed/cobed.hpp"

namespace {

void BM_OrbitTable(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const cobed::LatticeGeometry g(side, side);
  for (auto _ : state) {
    auto full = std::make_shared<const cobed::FullBasis>(g, 2);
    cobed::OrbitTable orbits(full);
    benchmark::DoNotOptimize(orbits.orbit_count());
  }
}
BENCHMARK(BM_OrbitTable)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SectorHamiltonian(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const cobed::LatticeGeometry g(side, side);
  const cobed::ModelParameters p{100.0, 1.0, 1.0, 2};
  const auto basis = cobed::build_sector_basis(g, 2);
  for (auto _ : state) {
    auto h = cobed::build_effective(g, p, basis);
    benchmark::DoNotOptimize(h.nonzeros());
  }
  state.counters["dim"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_SectorHamiltonian)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_GroundState(benchmark::State& state) {
  const auto length = static_cast<std::size_t>(state.range(0));
  const bool dense = state.range(1) != 0;
  const auto g = cobed::LatticeGeometry::ring(length);
  const cobed::ModelParameters p{100.0, 1.0, 1.0, 3};
  const auto h = cobed::build_effective(g, p, cobed::build_sector_basis(g, 3));
  cobed::SolverOptions opts;
  opts.dense_threshold = dense ? h.dimension() : 0;
  opts.check_degeneracy = false;
  for (auto _ : state) benchmark::DoNotOptimize(cobed::ground_state(h, opts).eigenvalue);
  state.counters["dim"] = static_cast<double>(h.dimension());
}
BENCHMARK(BM_GroundState)
    ->Args({30, 1})
    ->Args({30, 0})
    ->Args({60, 0})
    ->Unit(benchmark::kMillisecond);

void BM_FullModel(benchmark::State& state) {
  const auto g = cobed::LatticeGeometry::ring(static_cast<std::size_t>(state.range(0)));
  const cobed::ModelParameters p{100.0, 1.0, 1.0, 2};
  for (auto _ : state) {
    auto h = cobed::build_full(g, p);
    benchmark::DoNotOptimize(h.nonzeros());
  }
}
BENCHMARK(BM_FullModel)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
