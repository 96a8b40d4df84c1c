#include "dirlp/datasets.hpp"

#include <numeric>
#include <set>

#include "dirlp/rng.hpp"

namespace dirlp::datasets {

DirectedGraph make_directed_ring(NodeId n) {
  std::vector<Edge> edges;
  edges.reserve(n);
  for (NodeId u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return DirectedGraph::from_edges(n, edges);
}

DirectedGraph make_layered_digraph(NodeId n, NodeId window, double p_edge, double p_reciprocal,
                                   std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<NodeId> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  rng.shuffle(rank);  // rank[i] = hidden position of node i

  std::vector<NodeId> node_at(n);
  for (NodeId i = 0; i < n; ++i) node_at[rank[i]] = i;

  std::vector<Edge> edges;
  for (NodeId r = 0; r < n; ++r) {
    for (NodeId step = 1; step <= window && r + step < n; ++step) {
      if (rng.uniform() < p_edge) {
        NodeId u = node_at[r];
        NodeId v = node_at[r + step];
        edges.emplace_back(u, v);
        if (rng.uniform() < p_reciprocal) edges.emplace_back(v, u);
      }
    }
  }
  return DirectedGraph::from_edges(n, edges);
}

DirectedGraph make_citation_digraph(NodeId n, int refs, double copy_prob, NodeId window,
                                    double p_reciprocal, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<NodeId>> out_lists(n);
  std::vector<Edge> edges;
  auto add_edge = [&](NodeId src, NodeId dst) {
    edges.emplace_back(src, dst);
    out_lists[src].push_back(dst);
    if (rng.uniform() < p_reciprocal) edges.emplace_back(dst, src);
  };
  for (NodeId v = 1; v < n; ++v) {
    const NodeId lo = v > window ? v - window : 0;
    auto uniform_ref = [&] { return lo + NodeId(rng.bounded(v - lo)); };
    std::vector<NodeId> cited;
    const int m = int(std::min<NodeId>(NodeId(refs), v));
    for (int k = 0; k < m; ++k) {
      NodeId target;
      if (k > 0 && rng.uniform() < copy_prob) {
        // Copy a reference of an already-cited node, when it has any.
        NodeId via = cited[rng.bounded(cited.size())];
        if (!out_lists[via].empty()) {
          target = out_lists[via][rng.bounded(out_lists[via].size())];
        } else {
          target = uniform_ref();
        }
      } else {
        target = uniform_ref();
      }
      if (target == v) continue;
      cited.push_back(target);
      add_edge(v, target);
    }
  }
  return DirectedGraph::from_edges(n, edges);
}

DirectedGraph make_closure_digraph(NodeId n, std::size_t seed_edges, std::size_t closures,
                                   double mutual_ratio, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::set<Edge> have;
  std::vector<std::vector<NodeId>> out(n);
  std::vector<Edge> edges;
  auto add = [&](NodeId a, NodeId b) {
    if (a == b || have.count({a, b})) return false;
    have.insert({a, b});
    out[a].push_back(b);
    edges.emplace_back(a, b);
    return true;
  };

  std::size_t made = 0, attempts = 0;
  while (made < seed_edges && attempts++ < seed_edges * 50) {
    if (add(NodeId(rng.bounded(n)), NodeId(rng.bounded(n)))) ++made;
  }
  made = 0;
  attempts = 0;
  while (made < closures && attempts++ < closures * 200) {
    NodeId u = NodeId(rng.bounded(n));
    if (out[u].empty()) continue;
    NodeId t = out[u][rng.bounded(out[u].size())];
    if (out[t].empty()) continue;
    NodeId v = out[t][rng.bounded(out[t].size())];
    if (add(u, v)) ++made;
  }

  // Reciprocals: each planted reverse edge turns one existing edge into a
  // mutual pair and is itself mutual, so after planting P of them the ratio
  // is (m + 2P) / (|E| + P).
  std::size_t mutual_now = 0;
  for (const Edge& e : edges) {
    if (have.count({e.second, e.first})) ++mutual_now;
  }
  const double need = mutual_ratio * double(edges.size()) - double(mutual_now);
  if (need > 0) {
    const std::size_t want = std::size_t(need / (2.0 - mutual_ratio) + 0.5);
    made = 0;
    attempts = 0;
    while (made < want && attempts++ < want * 100) {
      const Edge& e = edges[rng.bounded(edges.size())];
      if (add(e.second, e.first)) ++made;
    }
  }
  return DirectedGraph::from_edges(n, edges);
}

double bidirectional_pair_ratio(const DirectedGraph& g) {
  if (g.num_edges() == 0) return 0.0;
  std::size_t reciprocated = 0;
  for (const Edge& e : g.edges()) {
    if (g.has_edge(e.second, e.first)) ++reciprocated;
  }
  return double(reciprocated) / double(g.num_edges());
}

double density(const DirectedGraph& g) {
  if (g.num_nodes() < 2) return 0.0;
  return double(g.num_edges()) / (double(g.num_nodes()) * double(g.num_nodes() - 1));
}

}  // namespace dirlp::datasets
