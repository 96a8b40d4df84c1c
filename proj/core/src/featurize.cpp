#include "dirlp/featurize.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "dirlp/error.hpp"

namespace dirlp::featurize {

std::vector<Sequence> canonical_sequences(int max_radius) {
  if (max_radius < 1) throw DomainError("max_radius must be >= 1");
  std::vector<Sequence> out;
  std::vector<Sequence> current{{}};
  for (int len = 1; len <= max_radius; ++len) {
    std::vector<Sequence> next;
    next.reserve(current.size() * 2);
    for (const Sequence& prefix : current) {
      for (Direction d : {Direction::in, Direction::out}) {
        Sequence s = prefix;
        s.push_back(d);
        next.push_back(std::move(s));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    current = std::move(next);
  }
  return out;
}

std::string sequence_name(const Sequence& s) {
  std::string name;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) name += '.';
    name += (s[i] == Direction::in) ? "in" : "out";
  }
  return name;
}

std::vector<NodeId> sequence_neighborhood(const DirectedGraph& g, NodeId u, const Sequence& s) {
  std::vector<NodeId> frontier{u};
  for (Direction step : s) {
    std::vector<NodeId> next;
    for (NodeId w : frontier) {
      auto row = g.neighbors(w, step);
      next.insert(next.end(), row.begin(), row.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  if (s.empty()) return frontier;  // degenerate: the singleton {u}
  return frontier;
}

std::size_t directed_feature_dim(int max_radius) {
  std::size_t m = (std::size_t{1} << (max_radius + 1)) - 2;
  return 2 * m * m + 2 * m;
}

std::size_t undirected_feature_dim(int max_radius) {
  return 4 * static_cast<std::size_t>(max_radius);
}

namespace {

std::size_t intersection_size(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

std::size_t union_size(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  return a.size() + b.size() - intersection_size(a, b);
}

std::vector<std::vector<NodeId>> sequence_sets(const DirectedGraph& g, NodeId u,
                                               int max_radius) {
  // Sequences share prefixes, so expand along the prefix tree level by
  // level: sets for length k derive from the matching length k-1 set.
  std::vector<std::vector<NodeId>> out;
  std::vector<std::vector<NodeId>> level{{u}};
  for (int len = 1; len <= max_radius; ++len) {
    std::vector<std::vector<NodeId>> next;
    next.reserve(level.size() * 2);
    for (const auto& frontier : level) {
      for (Direction d : {Direction::in, Direction::out}) {
        std::vector<NodeId> expanded;
        for (NodeId w : frontier) {
          auto row = g.neighbors(w, d);
          expanded.insert(expanded.end(), row.begin(), row.end());
        }
        std::sort(expanded.begin(), expanded.end());
        expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
        next.push_back(std::move(expanded));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

std::vector<std::vector<NodeId>> shell_sets(const DirectedGraph& g_sym, NodeId u,
                                            int max_radius) {
  std::vector<std::int32_t> dist = g_sym.bfs_distances(u, Direction::out, max_radius);
  std::vector<std::vector<NodeId>> shells(max_radius);
  for (NodeId v = 0; v < g_sym.num_nodes(); ++v) {
    if (v == u) continue;
    std::int32_t d = dist[v];
    if (d >= 1 && d <= max_radius) shells[d - 1].push_back(v);
  }
  return shells;
}

std::vector<double> directed_features_from_sets(const std::vector<std::vector<NodeId>>& su,
                                                const std::vector<std::vector<NodeId>>& sv) {
  const std::size_t m = su.size();
  std::vector<double> z;
  z.reserve(2 * m * m + 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) z.push_back(double(union_size(su[i], sv[j])));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) z.push_back(double(intersection_size(su[i], sv[j])));
  for (std::size_t i = 0; i < m; ++i) z.push_back(double(su[i].size()));
  for (std::size_t i = 0; i < m; ++i) z.push_back(double(sv[i].size()));
  return z;
}

std::vector<double> undirected_features_from_shells(const std::vector<std::vector<NodeId>>& hu,
                                                    const std::vector<std::vector<NodeId>>& hv) {
  const std::size_t n = hu.size();
  std::vector<double> z;
  z.reserve(4 * n);
  for (std::size_t k = 0; k < n; ++k) z.push_back(double(union_size(hu[k], hv[k])));
  for (std::size_t k = 0; k < n; ++k) z.push_back(double(intersection_size(hu[k], hv[k])));
  for (std::size_t k = 0; k < n; ++k) z.push_back(double(hu[k].size()));
  for (std::size_t k = 0; k < n; ++k) z.push_back(double(hv[k].size()));
  return z;
}

void check_pair(const DirectedGraph& g, NodeId u, NodeId v) {
  if (u >= g.num_nodes() || v >= g.num_nodes()) {
    throw RangeError("edge feature endpoint out of range");
  }
  if (u == v) throw DomainError("edge features undefined for u == v");
}

}  // namespace

std::vector<double> directed_edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                           int max_radius) {
  check_pair(g, u, v);
  if (max_radius < 1) throw DomainError("max_radius must be >= 1");
  return directed_features_from_sets(sequence_sets(g, u, max_radius),
                                     sequence_sets(g, v, max_radius));
}

std::vector<double> undirected_edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                             int max_radius) {
  check_pair(g, u, v);
  if (max_radius < 1) throw DomainError("max_radius must be >= 1");
  DirectedGraph g_sym = g.symmetrize();
  return undirected_features_from_shells(shell_sets(g_sym, u, max_radius),
                                         shell_sets(g_sym, v, max_radius));
}

std::vector<double> EdgeStructuralFeatures::z() const {
  std::vector<double> out;
  out.reserve(z_dir.size() + z_undir.size());
  out.insert(out.end(), z_dir.begin(), z_dir.end());
  out.insert(out.end(), z_undir.begin(), z_undir.end());
  return out;
}

EdgeStructuralFeatures edge_features(const DirectedGraph& g, NodeId u, NodeId v,
                                     int max_radius) {
  EdgeStructuralFeatures f;
  f.z_dir = directed_edge_features(g, u, v, max_radius);
  f.z_undir = undirected_edge_features(g, u, v, max_radius);
  return f;
}

std::vector<std::string> feature_column_names(int max_radius) {
  std::vector<Sequence> seqs = canonical_sequences(max_radius);
  std::vector<std::string> names;
  names.reserve(directed_feature_dim(max_radius) + undirected_feature_dim(max_radius));
  for (const Sequence& a : seqs)
    for (const Sequence& b : seqs) names.push_back("U(" + sequence_name(a) + "|" + sequence_name(b) + ")");
  for (const Sequence& a : seqs)
    for (const Sequence& b : seqs) names.push_back("I(" + sequence_name(a) + "|" + sequence_name(b) + ")");
  for (const Sequence& a : seqs) names.push_back("L(" + sequence_name(a) + ")");
  for (const Sequence& a : seqs) names.push_back("R(" + sequence_name(a) + ")");
  for (int k = 1; k <= max_radius; ++k) names.push_back("uU(" + std::to_string(k) + ")");
  for (int k = 1; k <= max_radius; ++k) names.push_back("uI(" + std::to_string(k) + ")");
  for (int k = 1; k <= max_radius; ++k) names.push_back("uL(" + std::to_string(k) + ")");
  for (int k = 1; k <= max_radius; ++k) names.push_back("uR(" + std::to_string(k) + ")");
  return names;
}

void write_feature_csv(std::ostream& out, const DirectedGraph& g,
                       const std::vector<Edge>& edges, int max_radius) {
  out << "u,v";
  for (const std::string& name : feature_column_names(max_radius)) out << ',' << name;
  out << '\n';
  EdgeFeaturizer featurizer(g, max_radius);
  for (const Edge& e : edges) {
    out << e.first << ',' << e.second;
    for (double x : featurizer.features(e.first, e.second)) out << ',' << x;
    out << '\n';
  }
}

EdgeFeaturizer::EdgeFeaturizer(const DirectedGraph& g, int max_radius)
    : g_(g),
      g_sym_(g.symmetrize()),
      max_radius_(max_radius),
      sequences_(canonical_sequences(max_radius)),
      sets_(g.num_nodes()),
      shells_(g.num_nodes()) {}

std::size_t EdgeFeaturizer::dim() const {
  return directed_feature_dim(max_radius_) + undirected_feature_dim(max_radius_);
}

const std::vector<std::vector<NodeId>>& EdgeFeaturizer::node_sets(NodeId u) {
  if (!sets_[u]) sets_[u] = sequence_sets(g_, u, max_radius_);
  return *sets_[u];
}

const std::vector<std::vector<NodeId>>& EdgeFeaturizer::node_shells(NodeId u) {
  if (!shells_[u]) shells_[u] = shell_sets(g_sym_, u, max_radius_);
  return *shells_[u];
}

namespace {

/// Neighbor row with one directed edge removed wherever an expansion could
/// traverse it.
std::vector<NodeId> masked_row(const DirectedGraph& g, NodeId w, Direction dir, Edge masked) {
  auto row = g.neighbors(w, dir);
  std::vector<NodeId> out(row.begin(), row.end());
  NodeId drop = kInvalidNode;
  if (dir == Direction::out && w == masked.first) drop = masked.second;
  if (dir == Direction::in && w == masked.second) drop = masked.first;
  if (drop != kInvalidNode) {
    out.erase(std::remove(out.begin(), out.end(), drop), out.end());
  }
  return out;
}

std::vector<std::vector<NodeId>> sequence_sets_masked(const DirectedGraph& g, NodeId start,
                                                      int max_radius, Edge masked) {
  std::vector<std::vector<NodeId>> out;
  std::vector<std::vector<NodeId>> level{{start}};
  for (int len = 1; len <= max_radius; ++len) {
    std::vector<std::vector<NodeId>> next;
    next.reserve(level.size() * 2);
    for (const auto& frontier : level) {
      for (Direction d : {Direction::in, Direction::out}) {
        std::vector<NodeId> expanded;
        for (NodeId w : frontier) {
          std::vector<NodeId> row = masked_row(g, w, d, masked);
          expanded.insert(expanded.end(), row.begin(), row.end());
        }
        std::sort(expanded.begin(), expanded.end());
        expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
        next.push_back(std::move(expanded));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

std::vector<std::vector<NodeId>> shell_sets_masked(const DirectedGraph& g_sym, NodeId start,
                                                   int max_radius, Edge masked,
                                                   bool reverse_exists) {
  // BFS on the symmetrized graph. The symmetrized u-v connection survives
  // the mask when the reverse directed edge is still present.
  const bool drop_sym = !reverse_exists;
  std::vector<std::int32_t> dist(g_sym.num_nodes(), -1);
  dist[start] = 0;
  std::vector<NodeId> frontier{start};
  std::int32_t depth = 0;
  while (!frontier.empty() && depth < max_radius) {
    ++depth;
    std::vector<NodeId> next;
    for (NodeId w : frontier) {
      for (NodeId x : g_sym.neighbors(w, Direction::out)) {
        if (drop_sym && ((w == masked.first && x == masked.second) ||
                         (w == masked.second && x == masked.first))) {
          continue;
        }
        if (dist[x] < 0) {
          dist[x] = depth;
          next.push_back(x);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<NodeId>> shells(max_radius);
  for (NodeId x = 0; x < g_sym.num_nodes(); ++x) {
    if (x != start && dist[x] >= 1) shells[dist[x] - 1].push_back(x);
  }
  return shells;
}

}  // namespace

std::vector<double> EdgeFeaturizer::compute_masked(NodeId u, NodeId v) const {
  const Edge masked{u, v};
  const bool reverse_exists = g_.has_edge(v, u);
  std::vector<double> z = directed_features_from_sets(
      sequence_sets_masked(g_, u, max_radius_, masked),
      sequence_sets_masked(g_, v, max_radius_, masked));
  std::vector<double> zu = undirected_features_from_shells(
      shell_sets_masked(g_sym_, u, max_radius_, masked, reverse_exists),
      shell_sets_masked(g_sym_, v, max_radius_, masked, reverse_exists));
  z.insert(z.end(), zu.begin(), zu.end());
  return z;
}

const std::vector<double>& EdgeFeaturizer::features(NodeId u, NodeId v) {
  check_pair(g_, u, v);
  const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
  std::scoped_lock lock(mutex_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::vector<double> z;
  if (g_.has_edge(u, v)) {
    // A pair that is itself an edge never counts that edge in its own
    // features; the memoized per-node sets cannot be reused here.
    z = compute_masked(u, v);
  } else {
    z = directed_features_from_sets(node_sets(u), node_sets(v));
    std::vector<double> zu = undirected_features_from_shells(node_shells(u), node_shells(v));
    z.insert(z.end(), zu.begin(), zu.end());
  }
  return cache_.emplace(key, std::move(z)).first->second;
}

std::string to_string(LabelMode m) { return m == LabelMode::de_k ? "de-k" : "de-log"; }

LabelMode label_mode_from_string(const std::string& s) {
  if (s == "de-k" || s == "de_k") return LabelMode::de_k;
  if (s == "de-log" || s == "de_log") return LabelMode::de_log;
  throw DomainError("unknown label mode: " + s);
}

namespace {

double encode_distance(std::int32_t d, LabelMode mode, int delta, NodeId num_nodes) {
  if (mode == LabelMode::de_k) {
    if (d < 0) return double(delta);  // unreachable truncates to delta
    return double(std::min<std::int32_t>(d, delta));
  }
  if (d < 0) return std::log1p(double(num_nodes));
  return std::log1p(double(d));
}

}  // namespace

NodeLabelMatrix distance_encoding_labels(const DirectedGraph& g,
                                         const std::vector<NodeId>& landmarks, LabelMode mode,
                                         int delta, bool directed) {
  if (landmarks.empty()) throw ContractError("distance_encoding_labels: landmarks empty");
  for (NodeId t : landmarks) {
    if (t >= g.num_nodes()) throw RangeError("landmark out of range");
  }
  if (mode == LabelMode::de_k && delta < 0) throw DomainError("delta must be >= 0");

  NodeLabelMatrix labels;
  labels.num_nodes = g.num_nodes();
  labels.mode = mode;
  labels.delta = delta;
  labels.directed = directed;
  labels.landmarks = landmarks;
  labels.dim = directed ? 2 * landmarks.size() : landmarks.size();
  labels.values.assign(labels.num_nodes * labels.dim, 0.0);

  DirectedGraph g_sym;
  if (!directed) g_sym = g.symmetrize();

  for (std::size_t j = 0; j < landmarks.size(); ++j) {
    NodeId t = landmarks[j];
    if (directed) {
      std::vector<std::int32_t> fwd = g.bfs_distances(t, Direction::out);
      std::vector<std::int32_t> bwd = g.bfs_distances(t, Direction::in);
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        labels.values[v * labels.dim + 2 * j] = encode_distance(fwd[v], mode, delta, g.num_nodes());
        labels.values[v * labels.dim + 2 * j + 1] =
            encode_distance(bwd[v], mode, delta, g.num_nodes());
      }
    } else {
      std::vector<std::int32_t> dist = g_sym.bfs_distances(t, Direction::out);
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        labels.values[v * labels.dim + j] = encode_distance(dist[v], mode, delta, g.num_nodes());
      }
    }
  }
  return labels;
}

std::vector<NodeId> select_landmarks(const DirectedGraph& g, std::size_t k) {
  if (k < 1) throw ContractError("select_landmarks: k must be >= 1");
  if (k > g.num_nodes()) throw ContractError("select_landmarks: k exceeds num_nodes");

  std::vector<NodeId> by_out(g.num_nodes()), by_in(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) by_out[u] = by_in[u] = u;
  std::stable_sort(by_out.begin(), by_out.end(), [&](NodeId a, NodeId b) {
    return g.out_degree(a) != g.out_degree(b) ? g.out_degree(a) > g.out_degree(b) : a < b;
  });
  std::stable_sort(by_in.begin(), by_in.end(), [&](NodeId a, NodeId b) {
    return g.in_degree(a) != g.in_degree(b) ? g.in_degree(a) > g.in_degree(b) : a < b;
  });

  std::vector<NodeId> chosen;
  std::vector<bool> used(g.num_nodes(), false);
  std::size_t i_out = 0, i_in = 0;
  bool take_out = true;  // start from the out-degree ranking
  while (chosen.size() < k) {
    auto& order = take_out ? by_out : by_in;
    auto& idx = take_out ? i_out : i_in;
    while (idx < order.size() && used[order[idx]]) ++idx;
    if (idx < order.size()) {
      chosen.push_back(order[idx]);
      used[order[idx]] = true;
    }
    take_out = !take_out;
  }
  return chosen;
}

}  // namespace dirlp::featurize
