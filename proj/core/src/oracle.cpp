#include "dirlp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dirlp/rng.hpp"
#include "dirlp/sampling.hpp"

namespace dirlp::oracle {

std::vector<std::vector<int>> dense_adjacency(const DirectedGraph& g) {
  std::vector<std::vector<int>> a(g.num_nodes(), std::vector<int>(g.num_nodes(), 0));
  for (const Edge& e : g.edges()) a[e.first][e.second] = 1;
  return a;
}

std::vector<std::vector<int>> dense_symmetrized_adjacency(const DirectedGraph& g) {
  std::vector<std::vector<int>> a(g.num_nodes(), std::vector<int>(g.num_nodes(), 0));
  for (const Edge& e : g.edges()) {
    a[e.first][e.second] = 1;
    a[e.second][e.first] = 1;
  }
  return a;
}

std::vector<std::vector<int>> mat_mul(const std::vector<std::vector<int>>& a,
                                      const std::vector<std::vector<int>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

double lp_score(const DirectedGraph& g, NodeId u, NodeId v, bool symmetric, double epsilon) {
  auto a = symmetric ? dense_symmetrized_adjacency(g) : dense_adjacency(g);
  auto a2 = mat_mul(a, a);
  auto a3 = mat_mul(a2, a);
  return double(a2[u][v]) + epsilon * double(a3[u][v]);
}

namespace {

std::set<NodeId> row_set(const std::vector<std::vector<int>>& a, NodeId u, bool transpose) {
  std::set<NodeId> out;
  for (NodeId w = 0; w < a.size(); ++w) {
    int bit = transpose ? a[w][u] : a[u][w];
    if (bit) out.insert(w);
  }
  return out;
}

}  // namespace

double cn_score(const DirectedGraph& g, NodeId u, NodeId v, heuristics::Family family,
                heuristics::Variant variant) {
  auto a = dense_adjacency(g);
  auto a_sym = dense_symmetrized_adjacency(g);
  std::set<NodeId> nu, nv;
  using heuristics::Variant;
  switch (variant) {
    case Variant::sym:
      nu = row_set(a_sym, u, false);
      nv = row_set(a_sym, v, false);
      break;
    case Variant::in_in:
      nu = row_set(a, u, true);
      nv = row_set(a, v, true);
      break;
    case Variant::in_out:
      nu = row_set(a, u, true);
      nv = row_set(a, v, false);
      break;
    case Variant::out_in:
      nu = row_set(a, u, false);
      nv = row_set(a, v, true);
      break;
    case Variant::out_out:
      nu = row_set(a, u, false);
      nv = row_set(a, v, false);
      break;
    default:
      return 0;
  }
  double score = 0;
  for (NodeId t : nu) {
    if (!nv.count(t)) continue;
    std::size_t degree = row_set(a_sym, t, false).size();
    if (family == heuristics::Family::ra) {
      if (degree > 0) score += 1.0 / double(degree);
    } else {
      if (degree > 1) score += 1.0 / std::log(double(degree));
    }
  }
  return score;
}

std::vector<NodeId> sequence_neighborhood(const DirectedGraph& g, NodeId u,
                                          const std::vector<Direction>& steps) {
  std::set<NodeId> frontier{u};
  for (Direction d : steps) {
    std::set<NodeId> next;
    for (const Edge& e : g.edges()) {
      if (d == Direction::out && frontier.count(e.first)) next.insert(e.second);
      if (d == Direction::in && frontier.count(e.second)) next.insert(e.first);
    }
    frontier = std::move(next);
  }
  return {frontier.begin(), frontier.end()};
}

namespace {

std::vector<std::vector<Direction>> all_sequences(int max_radius) {
  std::vector<std::vector<Direction>> out;
  std::vector<std::vector<Direction>> level{{}};
  for (int len = 1; len <= max_radius; ++len) {
    std::vector<std::vector<Direction>> next;
    for (const auto& prefix : level) {
      for (Direction d : {Direction::in, Direction::out}) {
        auto s = prefix;
        s.push_back(d);
        next.push_back(s);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

std::set<NodeId> to_set(const std::vector<NodeId>& v) { return {v.begin(), v.end()}; }

std::size_t set_union_size(const std::set<NodeId>& a, const std::set<NodeId>& b) {
  std::set<NodeId> u = a;
  u.insert(b.begin(), b.end());
  return u.size();
}

std::size_t set_intersection_size(const std::set<NodeId>& a, const std::set<NodeId>& b) {
  std::size_t c = 0;
  for (NodeId x : a) c += b.count(x);
  return c;
}

}  // namespace

std::vector<double> directed_edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                           int max_radius) {
  auto seqs = all_sequences(max_radius);
  std::vector<std::set<NodeId>> su, sv;
  for (const auto& s : seqs) {
    su.push_back(to_set(sequence_neighborhood(g, u, s)));
    sv.push_back(to_set(sequence_neighborhood(g, v, s)));
  }
  std::vector<double> z;
  for (const auto& a : su)
    for (const auto& b : sv) z.push_back(double(set_union_size(a, b)));
  for (const auto& a : su)
    for (const auto& b : sv) z.push_back(double(set_intersection_size(a, b)));
  for (const auto& a : su) z.push_back(double(a.size()));
  for (const auto& b : sv) z.push_back(double(b.size()));
  return z;
}

std::vector<double> undirected_edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                             int max_radius) {
  // Shells via explicit shortest-path search on the dense symmetrized
  // adjacency: distance k = first power with a nonzero walk count.
  auto a = dense_symmetrized_adjacency(g);
  const NodeId n = g.num_nodes();
  auto shells = [&](NodeId src) {
    std::vector<int> dist(n, -1);
    dist[src] = 0;
    std::vector<NodeId> frontier{src};
    int d = 0;
    while (!frontier.empty()) {
      ++d;
      std::vector<NodeId> next;
      for (NodeId w : frontier)
        for (NodeId x = 0; x < n; ++x) {
          if (a[w][x] && dist[x] < 0) {
            dist[x] = d;
            next.push_back(x);
          }
        }
      frontier = std::move(next);
    }
    std::vector<std::set<NodeId>> out(max_radius);
    for (NodeId x = 0; x < n; ++x) {
      if (x != src && dist[x] >= 1 && dist[x] <= max_radius) out[dist[x] - 1].insert(x);
    }
    return out;
  };
  auto hu = shells(u);
  auto hv = shells(v);
  std::vector<double> z;
  for (int k = 0; k < max_radius; ++k) z.push_back(double(set_union_size(hu[k], hv[k])));
  for (int k = 0; k < max_radius; ++k) z.push_back(double(set_intersection_size(hu[k], hv[k])));
  for (int k = 0; k < max_radius; ++k) z.push_back(double(hu[k].size()));
  for (int k = 0; k < max_radius; ++k) z.push_back(double(hv[k].size()));
  return z;
}

int matrix_power_distance(const DirectedGraph& g, NodeId s, NodeId t) {
  if (s == t) return 0;
  auto a = dense_adjacency(g);
  auto power = a;
  for (NodeId k = 1; k < g.num_nodes(); ++k) {
    if (power[s][t] > 0) return int(k);
    power = mat_mul(power, a);
  }
  return -1;
}

double rank_by_sort(double pos_score, const std::vector<double>& neg_scores,
                    eval::TiePolicy policy) {
  std::vector<double> all = neg_scores;
  all.push_back(pos_score);
  std::sort(all.begin(), all.end(), std::greater<double>());
  auto first = std::find(all.begin(), all.end(), pos_score);
  std::size_t first_pos = std::size_t(first - all.begin()) + 1;  // 1-based
  std::size_t tie_count = std::size_t(std::count(all.begin(), all.end(), pos_score));
  switch (policy) {
    case eval::TiePolicy::optimistic: return double(first_pos);
    case eval::TiePolicy::mid: return double(first_pos) + double(tie_count - 1) / 2.0;
    case eval::TiePolicy::pessimistic: return double(first_pos + tie_count - 1);
  }
  return double(first_pos);
}

NaiveRanking evaluate(const eval::BatchScorer& scorer, const std::vector<Edge>& test_pos,
                      const DirectedGraph& g, const eval::Protocol& protocol) {
  double reciprocal_sum = 0;
  double hit_count = 0;
  for (const Edge& pos : test_pos) {
    auto cs = sampling::eval_candidates(g, pos, protocol.candidates, protocol.seed);
    std::vector<Edge> batch{pos};
    batch.insert(batch.end(), cs.edges.begin(), cs.edges.end());
    std::vector<double> scores = scorer(batch);
    std::vector<double> negs(scores.begin() + 1, scores.end());
    double rank = rank_by_sort(scores[0], negs, protocol.tie_policy);
    reciprocal_sum += 1.0 / rank;
    if (rank <= double(protocol.hits_k)) hit_count += 1.0;
  }
  NaiveRanking out;
  out.mrr = reciprocal_sum / double(test_pos.size());
  out.hits = hit_count / double(test_pos.size());
  return out;
}

std::vector<double> finite_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
    double h) {
  std::vector<double> grad(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double fp = f(x);
    x[i] = orig - h;
    const double fm = f(x);
    x[i] = orig;
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

double max_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    double denom = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  if (a.size() != b.size()) return 1e9;
  return worst;
}

DirectedGraph random_digraph(NodeId n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (rng.uniform() < p) edges.emplace_back(u, v);
    }
  return DirectedGraph::from_edges(n, edges);
}

}  // namespace dirlp::oracle
