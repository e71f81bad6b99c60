// Serial reference vs OpenMP kernels on the sizes the pipeline actually sees.

#include "fmk/fixtures.hpp"
#include "fmk/kernels.hpp"
#include "fmk/mesh.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using fmk::kernels::RowMatrix;

RowMatrix gaussian(long rows, long cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  RowMatrix m(rows, cols);
  for (long i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  return m;
}

template <bool Parallel>
void BM_NearestRows(benchmark::State& state) {
  const long n = state.range(0);
  const RowMatrix q = gaussian(n, 30, 1), d = gaussian(n, 30, 2);
  for (auto _ : state) {
    auto r = Parallel ? fmk::kernels::parallel::nearest_rows(q, d) : fmk::kernels::serial::nearest_rows(q, d);
    benchmark::DoNotOptimize(r.index.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

template <bool Parallel>
void BM_SoftmaxRows(benchmark::State& state) {
  const long n = state.range(0);
  const RowMatrix q = gaussian(n, 30, 3), d = gaussian(n, 30, 4);
  for (auto _ : state) {
    RowMatrix r = Parallel ? fmk::kernels::parallel::softmax_rows(q, d, 0.07)
                           : fmk::kernels::serial::softmax_rows(q, d, 0.07);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

template <bool Parallel>
void BM_Dijkstra(benchmark::State& state) {
  const fmk::TriMesh m = fmk::fixtures::icosphere(static_cast<int>(state.range(0)));
  const fmk::EdgeGraph g = fmk::EdgeGraph::from_mesh(m);
  std::vector<int> sources(256);
  for (int i = 0; i < 256; ++i) sources[i] = (i * 37) % m.num_vertices();
  for (auto _ : state) {
    Eigen::MatrixXd d = Parallel ? fmk::kernels::parallel::dijkstra(g, sources)
                                 : fmk::kernels::serial::dijkstra(g, sources);
    benchmark::DoNotOptimize(d.data());
  }
}

template <bool Parallel>
void BM_SelfNearest(benchmark::State& state) {
  const RowMatrix f = gaussian(state.range(0), 64, 5);
  for (auto _ : state) {
    auto r = Parallel ? fmk::kernels::parallel::self_nearest_sq(f) : fmk::kernels::serial::self_nearest_sq(f);
    benchmark::DoNotOptimize(r.data());
  }
}

}  // namespace

BENCHMARK(BM_NearestRows<false>)->Name("nearest_rows/serial")->Arg(642)->Arg(2562)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestRows<true>)->Name("nearest_rows/parallel")->Arg(642)->Arg(2562)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SoftmaxRows<false>)->Name("softmax_rows/serial")->Arg(642)->Arg(2562)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SoftmaxRows<true>)->Name("softmax_rows/parallel")->Arg(642)->Arg(2562)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dijkstra<false>)->Name("dijkstra/serial")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dijkstra<true>)->Name("dijkstra/parallel")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelfNearest<false>)->Name("self_nearest/serial")->Arg(2562)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelfNearest<true>)->Name("self_nearest/parallel")->Arg(2562)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
