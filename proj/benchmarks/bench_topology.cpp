#include "tilekit/curvature.hpp"
#include "tilekit/generators.hpp"
#include "tilekit/spec_format.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tilekit;

void BM_AnalyzeFootball(benchmark::State& state) {
  const Surface s = football_disk(7, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(s));
  state.counters["faces"] = static_cast<double>(s.face_count());
}
BENCHMARK(BM_AnalyzeFootball)->DenseRange(1, 5);

void BM_BuildCatalog(benchmark::State& state) {
  const auto catalog = solid_catalog();
  for (auto _ : state) {
    for (const SolidId& id : catalog) benchmark::DoNotOptimize(build_solid(id));
  }
}
BENCHMARK(BM_BuildCatalog);

void BM_SnubDodecahedron(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(archimedean(Archimedean::SnubDodecahedron));
}
BENCHMARK(BM_SnubDodecahedron);

void BM_SpecRoundTrip(benchmark::State& state) {
  const std::string text = write_spec(torus_9fold());
  for (auto _ : state) benchmark::DoNotOptimize(write_spec(parse_spec(text)));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_SpecRoundTrip);

void BM_EnumerateFlat(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_vertex_configs(ConfigClass::Flat, static_cast<int>(state.range(0)), 6));
  }
}
BENCHMARK(BM_EnumerateFlat)->Arg(12)->Arg(42);

}  // namespace
