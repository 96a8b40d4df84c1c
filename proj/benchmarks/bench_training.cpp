#include <benchmark/benchmark.h>

#include "dirlp/autodiff.hpp"
#include "dirlp/datasets.hpp"
#include "dirlp/model.hpp"
#include "dirlp/rng.hpp"
#include "dirlp/sampling.hpp"

using namespace dirlp;

static void BM_train_step_dirlp(benchmark::State& state) {
  DirectedGraph g = datasets::make_closure_digraph(300, 400, 3600, 0.26, 12345);
  auto splits = sampling::make_splits(g, {0.7, 0.1, 0.2}, 1, 1);
  DirectedGraph g_train = sampling::training_graph(g, splits[0]);
  NodeFeatures none;
  none.num_nodes = g.num_nodes();
  model::ModelConfig cfg = model::dirlp_config();
  cfg.encoder.hidden_dim = 32;
  cfg.encoder.out_dim = 24;
  cfg.decoder.hidden = {32};
  cfg.embed_dim = 8;
  model::LinkModel net(cfg, g_train, none, 5);

  std::vector<Edge> batch = splits[0].train_pos;
  sampling::NegativeSet negs = sampling::sample_negatives(
      g_train, batch.size(), sampling::NegativeMode::directed, 3, splits[0].all_edges());
  batch.insert(batch.end(), negs.edges.begin(), negs.edges.end());
  std::vector<double> targets(splits[0].train_pos.size(), 1.0);
  targets.resize(batch.size(), 0.0);

  ad::AdamConfig adam;
  std::vector<ad::AdamState> states(net.parameters().size());
  std::uint64_t step = 0;
  for (auto _ : state) {
    model::LinkModel::StepResult sr = net.loss_and_grads(batch, targets, step++);
    for (std::size_t i = 0; i < net.parameters().size(); ++i) {
      ad::adam_step(net.parameters()[i], sr.grads[i], states[i], adam);
    }
    benchmark::DoNotOptimize(sr.loss);
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(batch.size()));
}
BENCHMARK(BM_train_step_dirlp)->Unit(benchmark::kMillisecond);

static void BM_score_batch(benchmark::State& state) {
  DirectedGraph g = datasets::make_closure_digraph(300, 400, 3600, 0.26, 12345);
  NodeFeatures none;
  none.num_nodes = g.num_nodes();
  model::ModelConfig cfg = model::dirlp_config();
  cfg.encoder.hidden_dim = 32;
  cfg.encoder.out_dim = 24;
  cfg.decoder.hidden = {32};
  cfg.embed_dim = 8;
  model::LinkModel net(cfg, g, none, 5);

  SplitMix64 rng(7);
  std::vector<Edge> batch;
  for (int i = 0; i < 101; ++i) {
    NodeId u = NodeId(rng.bounded(g.num_nodes()));
    NodeId v = NodeId(rng.bounded(g.num_nodes()));
    if (u != v) batch.emplace_back(u, v);
  }
  eval::BatchScorer scorer = net.scorer();
  for (auto _ : state) {
    benchmark::DoNotOptimize(scorer(batch));
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(batch.size()));
}
BENCHMARK(BM_score_batch)->Unit(benchmark::kMillisecond);

static void BM_adam_step(benchmark::State& state) {
  ad::Parameter p = ad::make_parameter("w", 256, 256, ad::Init::glorot_uniform, 1);
  std::vector<double> grad(p.value.size(), 0.01);
  ad::AdamState st;
  ad::AdamConfig cfg;
  for (auto _ : state) {
    ad::adam_step(p, grad, st, cfg);
    benchmark::DoNotOptimize(p.value[0]);
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(p.value.size()));
}
BENCHMARK(BM_adam_step);
