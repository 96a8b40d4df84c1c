#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dirlp/digraph.hpp"
#include "dirlp/eval.hpp"
#include "dirlp/heuristics.hpp"

namespace dirlp::oracle {

/// Naive reference implementations, deliberately independent of the CSR /
/// traversal code paths they are used to check: everything here works off
/// dense adjacency matrices and explicit walk enumeration built from the
/// plain edge list. Used by the verify command and the acceptance suite.

/// Dense 0/1 adjacency from the edge list.
std::vector<std::vector<int>> dense_adjacency(const DirectedGraph& g);
std::vector<std::vector<int>> dense_symmetrized_adjacency(const DirectedGraph& g);

/// Matrix product over int matrices.
std::vector<std::vector<int>> mat_mul(const std::vector<std::vector<int>>& a,
                                      const std::vector<std::vector<int>>& b);

/// LP score via explicit A^2, A^3 entries.
double lp_score(const DirectedGraph& g, NodeId u, NodeId v, bool symmetric, double epsilon);

/// RA/AA score via explicit set intersections on dense rows.
double cn_score(const DirectedGraph& g, NodeId u, NodeId v, heuristics::Family family,
                heuristics::Variant variant);

/// Targets of all directed n-step walks from u following the sequence,
/// enumerated step by step over the raw edge list. Sorted, deduplicated.
std::vector<NodeId> sequence_neighborhood(const DirectedGraph& g, NodeId u,
                                          const std::vector<Direction>& steps);

/// Structural feature vectors recomputed from the naive neighborhoods.
std::vector<double> directed_edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                           int max_radius);
std::vector<double> undirected_edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                             int max_radius);

/// BFS distance via repeated dense matrix powers (reachability at k).
/// Returns -1 when unreachable.
int matrix_power_distance(const DirectedGraph& g, NodeId s, NodeId t);

/// Rank of the positive among candidates by full descending sort.
double rank_by_sort(double pos_score, const std::vector<double>& neg_scores,
                    eval::TiePolicy policy);

/// Re-implementation of eval::evaluate on top of rank_by_sort. Shares only
/// the candidate sets (they are part of the protocol, not of the ranking
/// logic under test).
struct NaiveRanking {
  double mrr = 0;
  double hits = 0;
};
NaiveRanking evaluate(const eval::BatchScorer& scorer, const std::vector<Edge>& test_pos,
                      const DirectedGraph& g, const eval::Protocol& protocol);

/// Central finite differences of f at x, step h.
std::vector<double> finite_difference_gradient(const std::function<double(const std::vector<double>&)>& f,
                                               std::vector<double> x, double h = 1e-5);

/// Largest relative error max_i |a_i - b_i| / max(1, |a_i|, |b_i|).
double max_relative_error(const std::vector<double>& a, const std::vector<double>& b);

/// Erdos-Renyi style random digraph (each ordered pair independently with
/// probability p, no self loops), seeded.
DirectedGraph random_digraph(NodeId n, double p, std::uint64_t seed);

}  // namespace dirlp::oracle
