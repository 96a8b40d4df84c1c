#include <benchmark/benchmark.h>

#include "dirlp/datasets.hpp"
#include "dirlp/digraph.hpp"
#include "dirlp/oracle.hpp"

using namespace dirlp;

static void BM_csr_build(benchmark::State& state) {
  DirectedGraph g = oracle::random_digraph(NodeId(state.range(0)), 0.02, 7);
  std::vector<Edge> edges = g.edges();
  for (auto _ : state) {
    DirectedGraph rebuilt = DirectedGraph::from_edges(g.num_nodes(), edges);
    benchmark::DoNotOptimize(rebuilt.num_edges());
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(edges.size()));
}
BENCHMARK(BM_csr_build)->Arg(1000)->Arg(4000);

static void BM_symmetrize(benchmark::State& state) {
  DirectedGraph g = oracle::random_digraph(NodeId(state.range(0)), 0.02, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.symmetrize().num_edges());
  }
}
BENCHMARK(BM_symmetrize)->Arg(1000)->Arg(4000);

static void BM_bfs_distances(benchmark::State& state) {
  DirectedGraph g = datasets::make_closure_digraph(NodeId(state.range(0)),
                                                   std::size_t(state.range(0)) * 2,
                                                   std::size_t(state.range(0)) * 10, 0.26, 3);
  NodeId src = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.bfs_distances(src, Direction::out));
    src = (src + 1) % g.num_nodes();
  }
}
BENCHMARK(BM_bfs_distances)->Arg(300)->Arg(1000);

static void BM_truncated_distance(benchmark::State& state) {
  DirectedGraph g = datasets::make_closure_digraph(500, 1000, 5000, 0.26, 3);
  NodeId s = 0, t = 250;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.truncated_distance(s, t, 5, DirectedGraph::Sense::forward));
    s = (s + 1) % g.num_nodes();
    t = (t + 3) % g.num_nodes();
  }
}
BENCHMARK(BM_truncated_distance);
