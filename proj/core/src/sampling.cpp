#include "dirlp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dirlp/error.hpp"
#include "dirlp/rng.hpp"

namespace dirlp::sampling {

std::string to_string(NegativeMode mode) {
  return mode == NegativeMode::directed ? "directed" : "undirected";
}

NegativeMode negative_mode_from_string(const std::string& s) {
  if (s == "directed") return NegativeMode::directed;
  if (s == "undirected") return NegativeMode::undirected;
  throw DomainError("unknown negative sampling mode: " + s);
}

std::vector<Edge> EdgeSplit::all_edges() const {
  std::vector<Edge> all;
  all.reserve(train_pos.size() + valid_pos.size() + test_pos.size());
  all.insert(all.end(), train_pos.begin(), train_pos.end());
  all.insert(all.end(), valid_pos.begin(), valid_pos.end());
  all.insert(all.end(), test_pos.begin(), test_pos.end());
  return all;
}

std::vector<EdgeSplit> make_splits(const DirectedGraph& g, std::array<double, 3> ratios,
                                   std::uint64_t seed, std::size_t folds) {
  if (folds < 1) throw ContractError("make_splits: folds must be >= 1");
  double sum = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(sum - 1.0) > 1e-9 || ratios[0] < 0 || ratios[1] < 0 || ratios[2] < 0) {
    throw ContractError("make_splits: ratios must be non-negative and sum to 1");
  }
  const std::size_t m = g.num_edges();
  std::vector<EdgeSplit> splits;
  splits.reserve(folds);
  for (std::size_t fold = 0; fold < folds; ++fold) {
    EdgeSplit s;
    s.seed = seed + fold;
    s.ratios = ratios;
    std::vector<Edge> edges = g.edges();
    SplitMix64 rng(s.seed);
    rng.shuffle(edges);
    const std::size_t n_train = static_cast<std::size_t>(std::floor(ratios[0] * double(m)));
    const std::size_t n_valid = static_cast<std::size_t>(std::floor(ratios[1] * double(m)));
    if (n_train + n_valid >= m) {
      throw ContractError("make_splits: split leaves zero test edges");
    }
    s.train_pos.assign(edges.begin(), edges.begin() + n_train);
    s.valid_pos.assign(edges.begin() + n_train, edges.begin() + n_train + n_valid);
    s.test_pos.assign(edges.begin() + n_train + n_valid, edges.end());
    splits.push_back(std::move(s));
  }
  return splits;
}

DirectedGraph training_graph(const DirectedGraph& g, const EdgeSplit& split) {
  return DirectedGraph::from_edges(g.num_nodes(), split.train_pos);
}

namespace {

// Pair key for dedup sets; undirected equality canonicalizes order.
std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool is_positive(const DirectedGraph& g, NodeId u, NodeId v, NegativeMode mode) {
  if (g.has_edge(u, v)) return true;
  if (mode == NegativeMode::undirected && g.has_edge(v, u)) return true;
  return false;
}

}  // namespace

NegativeSet sample_negatives(const DirectedGraph& g, std::size_t count, NegativeMode mode,
                             std::uint64_t seed, const std::vector<Edge>& exclude) {
  if (count < 1) throw ContractError("sample_negatives: count must be >= 1");
  const NodeId n = g.num_nodes();
  if (n < 2) throw ExhaustionError("sample_negatives: graph has fewer than 2 nodes");

  std::unordered_set<std::uint64_t> excluded;
  excluded.reserve(exclude.size() * 2);
  for (const Edge& e : exclude) {
    excluded.insert(pair_key(e.first, e.second));
    if (mode == NegativeMode::undirected) excluded.insert(pair_key(e.second, e.first));
  }

  NegativeSet out;
  out.mode = mode;
  out.seed = seed;
  out.edges.reserve(count);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(count * 2);

  SplitMix64 rng(seed);
  const std::size_t max_attempts = 1000 * count;
  std::size_t attempts = 0;
  while (out.edges.size() < count) {
    if (attempts++ >= max_attempts) {
      throw ExhaustionError("sample_negatives: no acceptable pair after " +
                            std::to_string(max_attempts) + " attempts");
    }
    NodeId u = static_cast<NodeId>(rng.bounded(n));
    NodeId v = static_cast<NodeId>(rng.bounded(n));
    if (u == v) continue;
    if (is_positive(g, u, v, mode)) continue;
    if (excluded.count(pair_key(u, v))) continue;
    std::uint64_t key = (mode == NegativeMode::undirected && v < u) ? pair_key(v, u)
                                                                    : pair_key(u, v);
    if (!chosen.insert(key).second) continue;
    out.edges.emplace_back(u, v);
  }
  return out;
}

CandidateSet eval_candidates(const DirectedGraph& g, Edge positive, std::size_t num_candidates,
                             std::uint64_t seed) {
  if (num_candidates < 1) throw ContractError("eval_candidates: C must be >= 1");
  const auto [u, v] = positive;
  if (u >= g.num_nodes() || v >= g.num_nodes()) {
    throw RangeError("eval_candidates: positive edge out of range");
  }
  auto out_row = g.neighbors(u, Direction::out);

  // Valid corruptions: v' not in N_out(u), v' != u, v' != v.
  std::size_t invalid = out_row.size() + 1;  // out-neighbors plus u itself
  bool v_is_neighbor = std::binary_search(out_row.begin(), out_row.end(), v);
  if (!v_is_neighbor && v != u) ++invalid;
  const std::size_t valid = g.num_nodes() - std::min<std::size_t>(invalid, g.num_nodes());

  CandidateSet cs;
  SplitMix64 rng(derive_seed(seed, u, v));

  if (valid <= num_candidates) {
    // Return every valid corruption, in ascending order.
    for (NodeId w = 0; w < g.num_nodes(); ++w) {
      if (w == u || w == v) continue;
      if (std::binary_search(out_row.begin(), out_row.end(), w)) continue;
      cs.edges.emplace_back(u, w);
    }
    cs.shortfall = cs.edges.size() < num_candidates;
    return cs;
  }

  std::unordered_set<NodeId> chosen;
  chosen.reserve(num_candidates * 2);
  while (cs.edges.size() < num_candidates) {
    NodeId w = static_cast<NodeId>(rng.bounded(g.num_nodes()));
    if (w == u || w == v) continue;
    if (std::binary_search(out_row.begin(), out_row.end(), w)) continue;
    if (!chosen.insert(w).second) continue;
    cs.edges.emplace_back(u, w);
  }
  return cs;
}

}  // namespace dirlp::sampling
