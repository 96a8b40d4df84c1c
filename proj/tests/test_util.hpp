#pragma once

#include <sstream>
#include <vector>

#include "dirlp/digraph.hpp"

namespace dirlp::test {

/// The running 4-node fixture: 0->1, 1->2, 2->0, 0->3.
inline DirectedGraph g1() {
  return DirectedGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
}

/// Directed ring 0->1->...->n-1->0.
inline DirectedGraph ring(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return DirectedGraph::from_edges(n, edges);
}

inline std::vector<NodeId> to_vec(std::span<const NodeId> s) { return {s.begin(), s.end()}; }

}  // namespace dirlp::test
