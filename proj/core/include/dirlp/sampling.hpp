#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dirlp/digraph.hpp"

namespace dirlp::sampling {

enum class NegativeMode { directed, undirected };

std::string to_string(NegativeMode mode);
NegativeMode negative_mode_from_string(const std::string& s);

/// One train/valid/test partition of a graph's edge set. Deterministic
/// given (graph, ratios, seed): edges are Fisher-Yates shuffled with
/// SplitMix64(seed) and cut at floor(ratio * |E|) boundaries, remainder to
/// test.
struct EdgeSplit {
  std::vector<Edge> train_pos;
  std::vector<Edge> valid_pos;
  std::vector<Edge> test_pos;
  std::uint64_t seed = 0;
  std::array<double, 3> ratios{0.7, 0.1, 0.2};

  std::vector<Edge> all_edges() const;
};

/// Generate `folds` splits; fold i uses seed + i. Throws ContractError on
/// invalid ratios or when any fold ends up with zero test edges.
std::vector<EdgeSplit> make_splits(const DirectedGraph& g, std::array<double, 3> ratios,
                                   std::uint64_t seed, std::size_t folds);

/// Rebuild the message-passing graph from train positives only.
DirectedGraph training_graph(const DirectedGraph& g, const EdgeSplit& split);

struct NegativeSet {
  std::vector<Edge> edges;
  NegativeMode mode = NegativeMode::directed;
  std::uint64_t seed = 0;
};

/// Rejection-sample `count` negatives: uniform ordered pairs u != v,
/// accepted when not a positive under the mode's equality (directed:
/// (u,v) not in E; undirected: neither direction) and not in `exclude`
/// (same equality). No duplicates under the mode's equality. Gives up with
/// ExhaustionError after 1000 * count attempts.
NegativeSet sample_negatives(const DirectedGraph& g, std::size_t count, NegativeMode mode,
                             std::uint64_t seed, const std::vector<Edge>& exclude = {});

struct CandidateSet {
  std::vector<Edge> edges;  // corrupted-target candidates (u, v')
  bool shortfall = false;   // fewer than C valid corruptions existed
};

/// Evaluation candidates for a positive (u, v): C distinct (u, v') with
/// v' not in N_out(u), v' != v, v' != u, sampled without replacement from a
/// stream seeded by derive_seed(seed, u, v). When fewer than C valid
/// corruptions exist, all of them are returned and `shortfall` is set.
CandidateSet eval_candidates(const DirectedGraph& g, Edge positive, std::size_t num_candidates,
                             std::uint64_t seed);

}  // namespace dirlp::sampling
