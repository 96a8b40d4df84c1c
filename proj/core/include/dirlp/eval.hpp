#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dirlp/digraph.hpp"

namespace dirlp::eval {

/// How a positive that ties with negatives is ranked.
///   optimistic:  1 + |{s > pos}|
///   mid:         1 + |{s > pos}| + |{s == pos}| / 2   (half-ranks allowed)
///   pessimistic: 1 + |{s > pos}| + |{s == pos}|
enum class TiePolicy { optimistic, mid, pessimistic };

std::string to_string(TiePolicy p);
TiePolicy tie_policy_from_string(const std::string& s);

/// Rank of a positive among negative scores. Throws NumericError on NaN.
double rank_of_positive(double pos_score, const std::vector<double>& neg_scores,
                        TiePolicy policy);

/// Mean reciprocal rank. Ranks must be >= 1; empty input is a contract
/// error.
double mrr(const std::vector<double>& ranks);

/// Fraction of ranks <= k (boundary inclusive).
double hits_at_k(const std::vector<double>& ranks, int k);

/// Scores a batch of (u,v) pairs in one call. Pointwise scorers can be
/// adapted with `batched`.
using BatchScorer = std::function<std::vector<double>(const std::vector<Edge>&)>;
using Scorer = std::function<double(NodeId, NodeId)>;

BatchScorer batched(Scorer scorer);

struct Protocol {
  std::size_t candidates = 100;  // corrupted targets per positive
  int hits_k = 20;
  TiePolicy tie_policy = TiePolicy::mid;
  std::uint64_t seed = 0;
};

struct EdgeRank {
  Edge edge;
  double rank = 0;
  std::size_t candidate_count = 0;
  bool shortfall = false;
};

struct RankingReport {
  double mrr_value = 0;
  double hits_value = 0;
  int hits_k = 20;
  TiePolicy tie_policy = TiePolicy::mid;
  std::vector<EdgeRank> per_edge;

  std::vector<double> ranks() const;
};

/// Rank every test positive against its candidate corruptions (drawn via
/// sampling::eval_candidates on `g`) and aggregate MRR / Hits@k.
/// Deterministic given the protocol seed. Scorer errors propagate with the
/// offending pair attached.
RankingReport evaluate(const BatchScorer& scorer, const std::vector<Edge>& test_pos,
                       const DirectedGraph& g, const Protocol& protocol);

/// Per-edge rank dump: header "u,v,rank,reciprocal".
void write_rank_csv(std::ostream& out, const RankingReport& report);

/// Result of the four-node expressivity fixture: a complete directed graph
/// on which undirected structural features cannot separate edges (0,1) and
/// (0,3) while directed ones can.
struct ExpressivityReport {
  bool sgnn_distinguishes = false;
  bool dirlp_distinguishes = false;
  std::vector<Edge> fixture_edges;           // reconstructed orientation
  std::vector<double> lr_prefix_01;          // L || R block, edge (0,1), N=1
  std::vector<double> lr_prefix_03;          // L || R block, edge (0,3), N=1

  std::string to_json() const;
};

/// Reconstruct the directed K4 fixture by orientation search and check both
/// halves of the expressivity claim. Throws ContractError when no
/// orientation matches the required degree readings.
ExpressivityReport expressivity_check_k4();

}  // namespace dirlp::eval
