#include <benchmark/benchmark.h>

#include "dirlp/datasets.hpp"
#include "dirlp/heuristics.hpp"
#include "dirlp/rng.hpp"

using namespace dirlp;

namespace {

DirectedGraph bench_graph(NodeId n) {
  return datasets::make_closure_digraph(n, std::size_t(n) * 2, std::size_t(n) * 12, 0.26, 9);
}

void run_scorer(benchmark::State& state, heuristics::HeuristicSpec spec) {
  DirectedGraph g = bench_graph(NodeId(state.range(0)));
  heuristics::HeuristicScorer scorer(g, spec);
  SplitMix64 rng(5);
  for (auto _ : state) {
    NodeId u = NodeId(rng.bounded(g.num_nodes()));
    NodeId v = NodeId(rng.bounded(g.num_nodes()));
    if (u == v) continue;
    benchmark::DoNotOptimize(scorer(u, v));
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

static void BM_ra_sym(benchmark::State& state) {
  run_scorer(state, {heuristics::Family::ra, heuristics::Variant::sym});
}
BENCHMARK(BM_ra_sym)->Arg(500)->Arg(2000);

static void BM_ra_out_in(benchmark::State& state) {
  run_scorer(state, {heuristics::Family::ra, heuristics::Variant::out_in});
}
BENCHMARK(BM_ra_out_in)->Arg(500)->Arg(2000);

static void BM_aa_out_in(benchmark::State& state) {
  run_scorer(state, {heuristics::Family::aa, heuristics::Variant::out_in});
}
BENCHMARK(BM_aa_out_in)->Arg(500)->Arg(2000);

static void BM_lp_asym(benchmark::State& state) {
  run_scorer(state, {heuristics::Family::lp, heuristics::Variant::asym});
}
BENCHMARK(BM_lp_asym)->Arg(500)->Arg(2000);
