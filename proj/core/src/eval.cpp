#include "dirlp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dirlp/error.hpp"
#include "dirlp/featurize.hpp"
#include "dirlp/sampling.hpp"

namespace dirlp::eval {

std::string to_string(TiePolicy p) {
  switch (p) {
    case TiePolicy::optimistic: return "optimistic";
    case TiePolicy::mid: return "mid";
    case TiePolicy::pessimistic: return "pessimistic";
  }
  return "mid";
}

TiePolicy tie_policy_from_string(const std::string& s) {
  if (s == "optimistic") return TiePolicy::optimistic;
  if (s == "mid") return TiePolicy::mid;
  if (s == "pessimistic") return TiePolicy::pessimistic;
  throw DomainError("unknown tie policy: " + s);
}

double rank_of_positive(double pos_score, const std::vector<double>& neg_scores,
                        TiePolicy policy) {
  if (std::isnan(pos_score)) throw NumericError("rank_of_positive: NaN positive score");
  std::size_t above = 0, ties = 0;
  for (double s : neg_scores) {
    if (std::isnan(s)) throw NumericError("rank_of_positive: NaN negative score");
    if (s > pos_score) ++above;
    else if (s == pos_score) ++ties;
  }
  double base = 1.0 + double(above);
  switch (policy) {
    case TiePolicy::optimistic: return base;
    case TiePolicy::mid: return base + double(ties) / 2.0;
    case TiePolicy::pessimistic: return base + double(ties);
  }
  return base;
}

double mrr(const std::vector<double>& ranks) {
  if (ranks.empty()) throw ContractError("mrr: empty rank list");
  double sum = 0;
  for (double r : ranks) {
    if (r < 1.0) throw ContractError("mrr: rank < 1");
    sum += 1.0 / r;
  }
  return sum / double(ranks.size());
}

double hits_at_k(const std::vector<double>& ranks, int k) {
  if (ranks.empty()) throw ContractError("hits_at_k: empty rank list");
  if (k < 1) throw ContractError("hits_at_k: k must be >= 1");
  std::size_t hits = 0;
  for (double r : ranks) {
    if (r <= double(k)) ++hits;
  }
  return double(hits) / double(ranks.size());
}

BatchScorer batched(Scorer scorer) {
  return [scorer = std::move(scorer)](const std::vector<Edge>& edges) {
    std::vector<double> out;
    out.reserve(edges.size());
    for (const Edge& e : edges) out.push_back(scorer(e.first, e.second));
    return out;
  };
}

std::vector<double> RankingReport::ranks() const {
  std::vector<double> out;
  out.reserve(per_edge.size());
  for (const EdgeRank& r : per_edge) out.push_back(r.rank);
  return out;
}

RankingReport evaluate(const BatchScorer& scorer, const std::vector<Edge>& test_pos,
                       const DirectedGraph& g, const Protocol& protocol) {
  if (test_pos.empty()) throw ContractError("evaluate: empty positive set");
  RankingReport report;
  report.hits_k = protocol.hits_k;
  report.tie_policy = protocol.tie_policy;
  report.per_edge.reserve(test_pos.size());

  for (const Edge& pos : test_pos) {
    sampling::CandidateSet cs =
        sampling::eval_candidates(g, pos, protocol.candidates, protocol.seed);
    std::vector<Edge> batch;
    batch.reserve(cs.edges.size() + 1);
    batch.push_back(pos);
    batch.insert(batch.end(), cs.edges.begin(), cs.edges.end());
    std::vector<double> scores;
    try {
      scores = scorer(batch);
    } catch (const Error& ex) {
      throw Error(ex.kind(), "scorer failed on positive (" + std::to_string(pos.first) + "," +
                                 std::to_string(pos.second) + "): " + ex.what());
    } catch (const std::exception& ex) {
      throw NumericError("scorer failed on positive (" + std::to_string(pos.first) + "," +
                         std::to_string(pos.second) + "): " + ex.what());
    }
    if (scores.size() != batch.size()) {
      throw ContractError("evaluate: scorer returned wrong batch size");
    }
    std::vector<double> neg_scores(scores.begin() + 1, scores.end());
    EdgeRank er;
    er.edge = pos;
    er.candidate_count = cs.edges.size();
    er.shortfall = cs.shortfall;
    er.rank = rank_of_positive(scores[0], neg_scores, protocol.tie_policy);
    report.per_edge.push_back(er);
  }
  std::vector<double> ranks = report.ranks();
  report.mrr_value = mrr(ranks);
  report.hits_value = hits_at_k(ranks, protocol.hits_k);
  return report;
}

void write_rank_csv(std::ostream& out, const RankingReport& report) {
  out << "u,v,rank,reciprocal\n";
  for (const EdgeRank& r : report.per_edge) {
    out << r.edge.first << ',' << r.edge.second << ',' << r.rank << ',' << (1.0 / r.rank)
        << '\n';
  }
}

namespace {

// Degree readings quoted for the complete 4-node fixture:
// |N_in(0)|=2, |N_out(0)|=1, |N_in(1)|=1, |N_out(1)|=2, |N_in(3)|=3,
// |N_out(3)|=1. Node 2 is unconstrained. Each of the six vertex pairs
// must carry at least one directed edge (the underlying graph is complete);
// a pair may carry both. A plain tournament cannot meet |N_in(3)|=3 with
// |N_out(3)|=1 (total 4 > 3), so the search runs over the three states
// {forward, backward, both} per pair.
std::vector<Edge> find_k4_orientation() {
  const std::array<Edge, 6> pairs = {
      Edge{0, 1}, Edge{0, 2}, Edge{0, 3}, Edge{1, 2}, Edge{1, 3}, Edge{2, 3}};
  for (int mask = 0; mask < 729; ++mask) {  // 3^6 orientation states
    int code = mask;
    std::vector<Edge> edges;
    for (const Edge& p : pairs) {
      int state = code % 3;
      code /= 3;
      if (state == 0 || state == 2) edges.push_back(p);
      if (state == 1 || state == 2) edges.emplace_back(p.second, p.first);
    }
    DirectedGraph g = DirectedGraph::from_edges(4, edges);
    if (g.in_degree(0) == 2 && g.out_degree(0) == 1 && g.in_degree(1) == 1 &&
        g.out_degree(1) == 2 && g.in_degree(3) == 3 && g.out_degree(3) == 1) {
      return g.edges();
    }
  }
  throw ContractError("expressivity fixture: no orientation matches the degree readings");
}

}  // namespace

std::string ExpressivityReport::to_json() const {
  nlohmann::json j;
  j["sgnn_distinguishes"] = sgnn_distinguishes;
  j["dirlp_distinguishes"] = dirlp_distinguishes;
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : fixture_edges) edges.push_back({e.first, e.second});
  j["fixture_edges"] = edges;
  j["lr_prefix_01"] = lr_prefix_01;
  j["lr_prefix_03"] = lr_prefix_03;
  return j.dump(2);
}

ExpressivityReport expressivity_check_k4() {
  ExpressivityReport report;
  report.fixture_edges = find_k4_orientation();
  DirectedGraph g = DirectedGraph::from_edges(4, report.fixture_edges);

  const int radius = 1;
  std::vector<double> dir01 = featurize::directed_edge_features(g, 0, 1, radius);
  std::vector<double> dir03 = featurize::directed_edge_features(g, 0, 3, radius);
  std::vector<double> undir01 = featurize::undirected_edge_features(g, 0, 1, radius);
  std::vector<double> undir03 = featurize::undirected_edge_features(g, 0, 3, radius);

  // L||R block sits after the two M x M blocks; M = 2 at radius 1.
  const std::size_t m = 2;
  report.lr_prefix_01.assign(dir01.begin() + 2 * m * m, dir01.end());
  report.lr_prefix_03.assign(dir03.begin() + 2 * m * m, dir03.end());

  report.sgnn_distinguishes = (undir01 != undir03);
  report.dirlp_distinguishes = (dir01 != dir03);
  return report;
}

}  // namespace dirlp::eval
