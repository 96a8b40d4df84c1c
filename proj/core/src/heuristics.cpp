#include "dirlp/heuristics.hpp"

#include <algorithm>
#include <cmath>

#include "dirlp/error.hpp"

namespace dirlp::heuristics {

std::string to_string(Family f) {
  switch (f) {
    case Family::lp: return "LP";
    case Family::ra: return "RA";
    case Family::aa: return "AA";
  }
  return "?";
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::sym: return "sym";
    case Variant::asym: return "asym";
    case Variant::in_in: return "in-in";
    case Variant::in_out: return "in-out";
    case Variant::out_in: return "out-in";
    case Variant::out_out: return "out-out";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "LP" || s == "lp") return Family::lp;
  if (s == "RA" || s == "ra") return Family::ra;
  if (s == "AA" || s == "aa") return Family::aa;
  throw DomainError("unknown heuristic family: " + s);
}

Variant variant_from_string(const std::string& s) {
  if (s == "sym") return Variant::sym;
  if (s == "asym") return Variant::asym;
  if (s == "in-in") return Variant::in_in;
  if (s == "in-out") return Variant::in_out;
  if (s == "out-in") return Variant::out_in;
  if (s == "out-out") return Variant::out_out;
  throw DomainError("unknown heuristic variant: " + s);
}

std::string HeuristicSpec::name() const { return to_string(family) + "-" + to_string(variant); }

void HeuristicSpec::validate() const {
  if (family == Family::lp) {
    if (variant != Variant::sym && variant != Variant::asym) {
      throw DomainError("LP supports only sym/asym variants");
    }
    if (epsilon <= 0) throw DomainError("LP epsilon must be > 0");
  } else if (variant == Variant::asym) {
    throw DomainError(to_string(family) + " has no generic asym variant; pick a directional one");
  }
}

namespace {

std::size_t sorted_intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else { ++count; ++ia; ++ib; }
  }
  return count;
}

void check_pair(const DirectedGraph& g, NodeId u, NodeId v) {
  if (u >= g.num_nodes() || v >= g.num_nodes()) throw RangeError("heuristic endpoint out of range");
  if (u == v) throw DomainError("heuristic scores undefined for u == v");
}

// A^2_{uv} + eps * A^3_{uv} on whichever graph is passed.
double lp_entry(const DirectedGraph& g, NodeId u, NodeId v, double epsilon) {
  auto out_u = g.neighbors(u, Direction::out);
  auto in_v = g.neighbors(v, Direction::in);
  double two_walks = double(sorted_intersection_size(out_u, in_v));
  double three_walks = 0;
  for (NodeId t : out_u) {
    three_walks += double(sorted_intersection_size(g.neighbors(t, Direction::out), in_v));
  }
  return two_walks + epsilon * three_walks;
}

double cn_weight(const DirectedGraph& g_sym, NodeId t, Family family) {
  std::size_t degree = g_sym.neighbors(t, Direction::out).size();
  if (family == Family::ra) return degree > 0 ? 1.0 / double(degree) : 0.0;
  if (degree <= 1) return 0.0;  // AA log guard
  return 1.0 / std::log(double(degree));
}

double cn_score(const DirectedGraph& g, const DirectedGraph& g_sym, NodeId u, NodeId v,
                Family family, Variant variant) {
  std::span<const NodeId> nu, nv;
  if (variant == Variant::sym) {
    nu = g_sym.neighbors(u, Direction::out);
    nv = g_sym.neighbors(v, Direction::out);
  } else {
    Direction du = (variant == Variant::in_in || variant == Variant::in_out) ? Direction::in
                                                                             : Direction::out;
    Direction dv = (variant == Variant::in_in || variant == Variant::out_in) ? Direction::in
                                                                             : Direction::out;
    nu = g.neighbors(u, du);
    nv = g.neighbors(v, dv);
  }
  double score = 0;
  auto ia = nu.begin();
  auto ib = nv.begin();
  while (ia != nu.end() && ib != nv.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else {
      score += cn_weight(g_sym, *ia, family);
      ++ia;
      ++ib;
    }
  }
  return score;
}

}  // namespace

double score_lp(const DirectedGraph& g, NodeId u, NodeId v, Variant variant, double epsilon) {
  check_pair(g, u, v);
  if (epsilon <= 0) throw DomainError("LP epsilon must be > 0");
  if (variant == Variant::asym) return lp_entry(g, u, v, epsilon);
  if (variant == Variant::sym) return lp_entry(g.symmetrize(), u, v, epsilon);
  throw DomainError("LP supports only sym/asym variants");
}

double score_common_neighbor_family(const DirectedGraph& g, NodeId u, NodeId v, Family family,
                                    Variant variant) {
  check_pair(g, u, v);
  if (family == Family::lp) throw DomainError("use score_lp for the LP family");
  if (variant == Variant::asym) {
    throw DomainError("RA/AA need a directional variant, not generic asym");
  }
  return cn_score(g, g.symmetrize(), u, v, family, variant);
}

HeuristicScorer::HeuristicScorer(const DirectedGraph& g, HeuristicSpec spec)
    : g_(g), spec_(spec) {
  spec_.validate();
  // LP-asym is the only spec that never touches the symmetrized graph.
  if (!(spec_.family == Family::lp && spec_.variant == Variant::asym)) {
    g_sym_ = g.symmetrize();
  }
}

double HeuristicScorer::operator()(NodeId u, NodeId v) const {
  check_pair(g_, u, v);
  if (spec_.family == Family::lp) {
    const DirectedGraph& base = spec_.variant == Variant::asym ? g_ : g_sym_;
    return lp_entry(base, u, v, spec_.epsilon);
  }
  return cn_score(g_, g_sym_, u, v, spec_.family, spec_.variant);
}

eval::BatchScorer HeuristicScorer::batch() const {
  return [this](const std::vector<Edge>& edges) {
    std::vector<double> out;
    out.reserve(edges.size());
    for (const Edge& e : edges) out.push_back((*this)(e.first, e.second));
    return out;
  };
}

Variant best_directional_variant(const DirectedGraph& g, Family family,
                                 const std::vector<Edge>& validation_pos,
                                 const eval::Protocol& protocol) {
  if (validation_pos.empty()) {
    throw ContractError("best_directional_variant: empty validation set");
  }
  if (family == Family::lp) {
    throw DomainError("best_directional_variant applies to RA/AA only");
  }
  Variant best = kDirectionalVariants.front();
  double best_mrr = -1;
  for (Variant v : kDirectionalVariants) {
    HeuristicScorer scorer(g, HeuristicSpec{family, v});
    eval::RankingReport report = eval::evaluate(scorer.batch(), validation_pos, g, protocol);
    if (report.mrr_value > best_mrr) {
      best_mrr = report.mrr_value;
      best = v;
    }
  }
  return best;
}

}  // namespace dirlp::heuristics
