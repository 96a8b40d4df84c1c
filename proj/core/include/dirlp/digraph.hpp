#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dirlp {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;  // (src, dst)

inline constexpr NodeId kInvalidNode = 0xffffffffu;

enum class Direction { in, out };

/// Immutable directed graph held as a dual CSR: one row store per direction.
/// Neighbor lists are sorted ascending, deduplicated and free of self-loops,
/// so membership is a binary search and set algebra over rows is linear.
///
/// Construction is single-threaded; all queries afterwards are pure reads
/// and safe under unrestricted concurrent access.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Build from an edge list. Duplicate edges collapse; self-loops are
  /// dropped and counted. Throws RangeError when an endpoint >= num_nodes.
  static DirectedGraph from_edges(NodeId num_nodes, const std::vector<Edge>& edges);

  NodeId num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t dropped_self_loops() const { return dropped_self_loops_; }

  /// The deduplicated edge multiset, sorted by (src, dst).
  const std::vector<Edge>& edges() const { return edges_; }

  /// Sorted neighbor row of u: dir=out -> {v | (u,v) in E},
  /// dir=in -> {v | (v,u) in E}.
  std::span<const NodeId> neighbors(NodeId u, Direction dir) const;

  std::size_t out_degree(NodeId u) const { return neighbors(u, Direction::out).size(); }
  std::size_t in_degree(NodeId u) const { return neighbors(u, Direction::in).size(); }

  /// True iff (u,v) is an edge.
  bool has_edge(NodeId u, NodeId v) const;

  /// Union of this graph with its reverse; result compares every pair in
  /// both directions. Idempotent.
  DirectedGraph symmetrize() const;

  /// True iff for all u, in- and out-rows coincide.
  bool is_symmetric() const;

  /// min(delta, hop count) by BFS. dir=forward measures d(s,t) along edge
  /// directions, dir=backward measures d(t,s). Unreachable within delta
  /// encodes as delta.
  enum class Sense { forward, backward };
  int truncated_distance(NodeId s, NodeId t, int delta, Sense sense) const;

  /// BFS distances from src to every node following `dir` edges.
  /// Unreachable nodes get -1. When `max_depth` >= 0 the search stops
  /// expanding that ring (deeper nodes stay -1).
  std::vector<std::int32_t> bfs_distances(NodeId src, Direction dir,
                                          std::int32_t max_depth = -1) const;

  /// Exact k-hop shell around u on a symmetric graph: nodes at distance
  /// exactly k, never containing u. Throws ContractError on non-symmetric
  /// input, RangeError on bad u, DomainError on k < 1.
  std::vector<NodeId> bfs_shell(NodeId u, int k) const;

 private:
  void check_node(NodeId u) const;

  NodeId num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
  std::size_t dropped_self_loops_ = 0;
  mutable std::int8_t symmetric_cache_ = -1;  // -1 unknown, else bool
};

/// Parse the edge-list text format: one "src dst" pair per line, arbitrary
/// whitespace separation, '#'-prefixed comment lines and blank lines
/// ignored. Ids must be non-negative integers. When num_nodes is absent it
/// becomes max id + 1. Malformed lines raise ParseError with the line
/// number; ids >= a supplied num_nodes raise RangeError.
DirectedGraph load_edge_list(std::istream& in, std::optional<NodeId> num_nodes = {});
DirectedGraph load_edge_list_file(const std::string& path, std::optional<NodeId> num_nodes = {});

/// Write the canonical edge-list text format.
void save_edge_list(std::ostream& out, const DirectedGraph& g);

/// Dense per-node features. d_raw = 0 is valid (featureless graphs).
struct NodeFeatures {
  std::size_t num_nodes = 0;
  std::size_t dim = 0;
  std::vector<double> values;  // row-major num_nodes x dim

  std::span<const double> row(NodeId u) const {
    return {values.data() + static_cast<std::size_t>(u) * dim, dim};
  }
};

/// Load a feature CSV (header "id,f0,f1,...", one row per node, ids dense).
/// Throws IngestError when rows do not cover exactly [0, num_nodes) or any
/// entry is non-finite.
NodeFeatures load_feature_csv(std::istream& in, NodeId num_nodes);
NodeFeatures load_feature_csv_file(const std::string& path, NodeId num_nodes);

}  // namespace dirlp
