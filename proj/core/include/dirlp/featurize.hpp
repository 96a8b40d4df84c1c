#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dirlp/digraph.hpp"

namespace dirlp::featurize {

/// A word over {in, out} prescribing the direction of each walk step.
using Sequence = std::vector<Direction>;

/// All sequences of length 1..max_radius in canonical order: length-major,
/// then lexicographic with in < out. The family has 2^(N+1) - 2 members.
std::vector<Sequence> canonical_sequences(int max_radius);

std::string sequence_name(const Sequence& s);

/// Nodes reachable from u by an n-step walk whose i-th step follows the
/// direction s[i]. Set semantics: frontiers are deduplicated and u itself
/// may reappear (walks may return). Result sorted ascending.
std::vector<NodeId> sequence_neighborhood(const DirectedGraph& g, NodeId u, const Sequence& s);

/// Dimension of the directed block: 2M^2 + 2M with M = 2^(N+1) - 2.
std::size_t directed_feature_dim(int max_radius);
/// Dimension of the undirected block: 4N.
std::size_t undirected_feature_dim(int max_radius);

/// Directed structural features of an ordered pair (u,v):
/// U block (M^2 pairwise union cardinalities, canonical order), then I
/// block (intersections), then L (|N_s(u)|), then R (|N_s(v)|).
std::vector<double> directed_edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                           int max_radius);

/// Undirected counterpart over exact k-hop shells of the symmetrized graph:
/// [|N_k(u) u N_k(v)|]_k || [|N_k(u) n N_k(v)|]_k || [|N_k(u)|]_k ||
/// [|N_k(v)|]_k, dimension 4N.
std::vector<double> undirected_edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                             int max_radius);

struct EdgeStructuralFeatures {
  std::vector<double> z_dir;
  std::vector<double> z_undir;

  std::vector<double> z() const;
};

/// Full structural feature vector z = z_dir || z_undir.
EdgeStructuralFeatures edge_features(const DirectedGraph& g, NodeId u, NodeId v, int max_radius);

/// Column names for the full z layout, matching edge_features order.
std::vector<std::string> feature_column_names(int max_radius);

/// Write a feature matrix as CSV: header "u,v,<column names>", one row per
/// edge.
void write_feature_csv(std::ostream& out, const DirectedGraph& g,
                       const std::vector<Edge>& edges, int max_radius);

/// Bulk extractor with two memo layers: per-node sequence neighborhoods /
/// shells, and a per-(u,v) feature cache. Insert-if-absent is mutex
/// guarded, so concurrent extraction over edge batches is safe.
///
/// When (u,v) is itself an edge of the graph it is masked out of its own
/// feature computation: the features describe the pair's context, never
/// the answer. Without this, training positives carry their own label
/// inside z and the model collapses on unseen pairs.
class EdgeFeaturizer {
 public:
  EdgeFeaturizer(const DirectedGraph& g, int max_radius);

  int max_radius() const { return max_radius_; }
  std::size_t dim() const;

  /// Cached z = z_dir || z_undir for (u,v), with (u,v) masked if present.
  const std::vector<double>& features(NodeId u, NodeId v);

 private:
  std::vector<double> compute_masked(NodeId u, NodeId v) const;
  const std::vector<std::vector<NodeId>>& node_sets(NodeId u);
  const std::vector<std::vector<NodeId>>& node_shells(NodeId u);

  const DirectedGraph& g_;
  DirectedGraph g_sym_;
  int max_radius_;
  std::vector<Sequence> sequences_;
  std::vector<std::optional<std::vector<std::vector<NodeId>>>> sets_;    // per node, M sorted sets
  std::vector<std::optional<std::vector<std::vector<NodeId>>>> shells_;  // per node, N shells
  std::unordered_map<std::uint64_t, std::vector<double>> cache_;
  std::mutex mutex_;
};

enum class LabelMode { de_k, de_log };

std::string to_string(LabelMode m);
LabelMode label_mode_from_string(const std::string& s);

/// Distance-encoding node labels against a landmark list.
struct NodeLabelMatrix {
  std::size_t num_nodes = 0;
  std::size_t dim = 0;          // 2 * |landmarks| when directed, else |landmarks|
  std::vector<double> values;   // row-major, landmark-major columns
  LabelMode mode = LabelMode::de_k;
  int delta = 3;                // de_k truncation
  bool directed = true;
  std::vector<NodeId> landmarks;

  std::span<const double> row(NodeId u) const {
    return {values.data() + static_cast<std::size_t>(u) * dim, dim};
  }
};

/// Compute labels. Directed mode emits [d^delta(t,v), d^delta(v,t)] per
/// landmark t (de_k), or [ln(1+d(t,v)), ln(1+d(v,t))] with unreachable
/// mapped to ln(1+num_nodes) (de_log). Undirected mode uses one BFS
/// distance on symmetrize(g) per landmark with the same truncation/log
/// rules.
NodeLabelMatrix distance_encoding_labels(const DirectedGraph& g,
                                         const std::vector<NodeId>& landmarks, LabelMode mode,
                                         int delta, bool directed);

/// Deterministic landmark choice: highest out-degree first, then highest
/// in-degree, then alternating next-highest; ties to the smallest id, no
/// duplicates.
std::vector<NodeId> select_landmarks(const DirectedGraph& g, std::size_t k);

}  // namespace dirlp::featurize
