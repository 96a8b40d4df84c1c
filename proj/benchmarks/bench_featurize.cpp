#include <benchmark/benchmark.h>

#include "dirlp/datasets.hpp"
#include "dirlp/featurize.hpp"
#include "dirlp/rng.hpp"

using namespace dirlp;

static void BM_edge_features_cold(benchmark::State& state) {
  DirectedGraph g = datasets::make_closure_digraph(400, 800, 4800, 0.26, 9);
  const int radius = int(state.range(0));
  SplitMix64 rng(3);
  for (auto _ : state) {
    // Fresh featurizer: includes the per-node memo build.
    state.PauseTiming();
    featurize::EdgeFeaturizer featurizer(g, radius);
    NodeId u = NodeId(rng.bounded(g.num_nodes()));
    NodeId v = NodeId(rng.bounded(g.num_nodes()));
    if (u == v) v = (v + 1) % g.num_nodes();
    state.ResumeTiming();
    benchmark::DoNotOptimize(featurizer.features(u, v));
  }
}
BENCHMARK(BM_edge_features_cold)->Arg(1)->Arg(2);

static void BM_edge_features_warm(benchmark::State& state) {
  DirectedGraph g = datasets::make_closure_digraph(400, 800, 4800, 0.26, 9);
  featurize::EdgeFeaturizer featurizer(g, int(state.range(0)));
  SplitMix64 rng(3);
  for (auto _ : state) {
    NodeId u = NodeId(rng.bounded(g.num_nodes()));
    NodeId v = NodeId(rng.bounded(g.num_nodes()));
    if (u == v) v = (v + 1) % g.num_nodes();
    benchmark::DoNotOptimize(featurizer.features(u, v));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_edge_features_warm)->Arg(1)->Arg(2);

static void BM_distance_labels(benchmark::State& state) {
  DirectedGraph g = datasets::make_closure_digraph(NodeId(state.range(0)),
                                                   std::size_t(state.range(0)) * 2,
                                                   std::size_t(state.range(0)) * 12, 0.26, 9);
  std::vector<NodeId> landmarks = featurize::select_landmarks(g, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        featurize::distance_encoding_labels(g, landmarks, featurize::LabelMode::de_k, 15, true));
  }
}
BENCHMARK(BM_distance_labels)->Arg(500)->Arg(2000);
