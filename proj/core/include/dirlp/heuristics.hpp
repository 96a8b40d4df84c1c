#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dirlp/digraph.hpp"
#include "dirlp/eval.hpp"

namespace dirlp::heuristics {

enum class Family { lp, ra, aa };

/// sym/asym apply to LP; sym plus the four directional forms apply to
/// RA/AA.
enum class Variant { sym, asym, in_in, in_out, out_in, out_out };

std::string to_string(Family f);
std::string to_string(Variant v);
Family family_from_string(const std::string& s);
Variant variant_from_string(const std::string& s);

struct HeuristicSpec {
  Family family = Family::ra;
  Variant variant = Variant::sym;
  double epsilon = 1e-3;  // LP three-walk weight

  std::string name() const;      // e.g. "RA-in-out"
  void validate() const;         // variant/family compatibility, epsilon > 0
};

/// Local-path score. asym evaluates A^2 + eps*A^3 entries on g; sym the
/// same on symmetrize(g). Walk counts come from two-/three-step neighbor
/// traversal; no dense matrices. Throws DomainError on u == v.
double score_lp(const DirectedGraph& g, NodeId u, NodeId v, Variant variant, double epsilon);

/// RA / AA score. sym sums over common neighbors on the symmetrized graph;
/// a directional variant d_u-d_v sums over N_{d_u}(u) n N_{d_v}(v) on g.
/// The weight always uses the symmetrized degree |N(t)|: 1/|N(t)| for RA,
/// 1/ln|N(t)| for AA with |N(t)| <= 1 contributing 0.
double score_common_neighbor_family(const DirectedGraph& g, NodeId u, NodeId v, Family family,
                                    Variant variant);

/// Bulk scorer that symmetrizes once and reuses rows across pairs.
class HeuristicScorer {
 public:
  HeuristicScorer(const DirectedGraph& g, HeuristicSpec spec);

  double operator()(NodeId u, NodeId v) const;
  eval::BatchScorer batch() const;

 private:
  const DirectedGraph& g_;
  DirectedGraph g_sym_;
  HeuristicSpec spec_;
};

/// Order in which directional variants are enumerated (and how ties in
/// validation MRR break).
inline constexpr std::array<Variant, 4> kDirectionalVariants = {Variant::in_in, Variant::in_out,
                                                                Variant::out_in, Variant::out_out};

/// Pick the directional variant of RA/AA with the best validation MRR.
/// Candidates are drawn on `g` (scores are computed on `g` too). Ties
/// break by kDirectionalVariants order. Throws ContractError on an empty
/// validation set.
Variant best_directional_variant(const DirectedGraph& g, Family family,
                                 const std::vector<Edge>& validation_pos,
                                 const eval::Protocol& protocol);

}  // namespace dirlp::heuristics
