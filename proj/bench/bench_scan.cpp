#include <benchmark/benchmark.h>

#include <vector>

#include "solgeom/triangles.hpp"
#include "solgeom/verify.hpp"

using namespace solgeom;

namespace {

std::vector<Triangle> make_triangles(std::size_t n) {
  std::vector<Triangle> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rng = verify::trial_engine(11, i);
    out.push_back(verify::random_triangle(rng, {}));
  }
  return out;
}

void BM_ScanSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::theorem_scan_serial(static_cast<std::uint64_t>(state.range(0)), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScanParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::theorem_scan(static_cast<std::uint64_t>(state.range(0)), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchSerial(benchmark::State& state) {
  const auto tris = make_triangles(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(angle_sum_batch_serial(tris));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchParallel(benchmark::State& state) {
  const auto tris = make_triangles(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(angle_sum_batch(tris));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
