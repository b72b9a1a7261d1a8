#include "tilekit/embedding.hpp"
#include "tilekit/generators.hpp"
#include "tilekit/geodesics.hpp"
#include "tilekit/net.hpp"
#include "tilekit/triangle.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace tilekit;

void BM_TraceRay(benchmark::State& state) {
  const Surface s = football_disk(6, 4);
  for (auto _ : state) benchmark::DoNotOptimize(trace_ray(s, {FaceId{0}, {0.05, 0.01}}, {1, 0.37}, 5.0));
}
BENCHMARK(BM_TraceRay);

void BM_ShortestGeodesic(benchmark::State& state) {
  const Surface s = football_disk(7, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shortest_geodesic(s, {FaceId{15}, {0, 0}}, {FaceId{11}, {0, 0}}));
  }
}
BENCHMARK(BM_ShortestGeodesic);

void BM_GeodesicTriangle(benchmark::State& state) {
  const Surface s = football_disk(7, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        geodesic_triangle(s, {FaceId{15}, {0, 0}}, {FaceId{11}, {0, 0}}, {FaceId{21}, {0, 0}}));
  }
}
BENCHMARK(BM_GeodesicTriangle);

void BM_Gradient(benchmark::State& state) {
  const EmbeddedMesh m = init_embedding(archimedean(Archimedean::TruncatedIcosidodecahedron), 0);
  for (auto _ : state) benchmark::DoNotOptimize(gradient(m));
  state.counters["springs"] = static_cast<double>(m.springs.size());
}
BENCHMARK(BM_Gradient);

void BM_RelaxTruncatedIcosahedron(benchmark::State& state) {
  const EmbeddedMesh start = init_embedding(archimedean(Archimedean::TruncatedIcosahedron), 0);
  for (auto _ : state) {
    EmbeddedMesh m = start;
    benchmark::DoNotOptimize(relax(m, RelaxOptions{.max_iters = static_cast<int>(state.range(0)), .tol = 0, .on_step = {}}));
  }
}
BENCHMARK(BM_RelaxTruncatedIcosahedron)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_UnfoldNet(benchmark::State& state) {
  const Surface s = football_disk(7, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(unfold_net(s, FaceId{0}, TreeStrategy::BreadthFirst));
  state.counters["faces"] = static_cast<double>(s.face_count());
}
BENCHMARK(BM_UnfoldNet)->DenseRange(1, 4);

}  // namespace
