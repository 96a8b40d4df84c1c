#include "dirlp/digraph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dirlp/error.hpp"

namespace dirlp {

DirectedGraph DirectedGraph::from_edges(NodeId num_nodes, const std::vector<Edge>& raw) {
  DirectedGraph g;
  g.num_nodes_ = num_nodes;

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::size_t self_loops = 0;
  for (const Edge& e : raw) {
    if (e.first >= num_nodes || e.second >= num_nodes) {
      throw RangeError("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                       ") out of range for num_nodes=" + std::to_string(num_nodes));
    }
    if (e.first == e.second) {
      ++self_loops;
      continue;
    }
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  g.edges_ = std::move(edges);
  g.dropped_self_loops_ = self_loops;

  const std::size_t m = g.edges_.size();
  g.out_offsets_.assign(num_nodes + 1, 0);
  g.in_offsets_.assign(num_nodes + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.out_offsets_[e.first + 1];
    ++g.in_offsets_[e.second + 1];
  }
  for (NodeId u = 0; u < num_nodes; ++u) {
    g.out_offsets_[u + 1] += g.out_offsets_[u];
    g.in_offsets_[u + 1] += g.in_offsets_[u];
  }
  g.out_targets_.resize(m);
  g.in_sources_.resize(m);
  std::vector<std::size_t> out_fill(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.out_targets_[out_fill[e.first]++] = e.second;
    g.in_sources_[in_fill[e.second]++] = e.first;
  }
  // edges_ is sorted by (src,dst) so out rows are already ascending; in rows
  // inherit ascending sources from the same pass.
  return g;
}

void DirectedGraph::check_node(NodeId u) const {
  if (u >= num_nodes_) {
    throw RangeError("node id " + std::to_string(u) + " out of range (num_nodes=" +
                     std::to_string(num_nodes_) + ")");
  }
}

std::span<const NodeId> DirectedGraph::neighbors(NodeId u, Direction dir) const {
  check_node(u);
  if (dir == Direction::out) {
    return {out_targets_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
  }
  return {in_sources_.data() + in_offsets_[u], in_offsets_[u + 1] - in_offsets_[u]};
}

bool DirectedGraph::has_edge(NodeId u, NodeId v) const {
  auto row = neighbors(u, Direction::out);
  return std::binary_search(row.begin(), row.end(), v);
}

DirectedGraph DirectedGraph::symmetrize() const {
  std::vector<Edge> both;
  both.reserve(edges_.size() * 2);
  for (const Edge& e : edges_) {
    both.push_back(e);
    both.emplace_back(e.second, e.first);
  }
  DirectedGraph g = from_edges(num_nodes_, both);
  g.symmetric_cache_ = 1;
  return g;
}

bool DirectedGraph::is_symmetric() const {
  if (symmetric_cache_ >= 0) return symmetric_cache_ != 0;
  bool sym = true;
  for (const Edge& e : edges_) {
    auto row = neighbors(e.second, Direction::out);
    if (!std::binary_search(row.begin(), row.end(), e.first)) {
      sym = false;
      break;
    }
  }
  symmetric_cache_ = sym ? 1 : 0;
  return sym;
}

int DirectedGraph::truncated_distance(NodeId s, NodeId t, int delta, Sense sense) const {
  check_node(s);
  check_node(t);
  if (delta < 0) throw DomainError("truncated_distance: delta must be >= 0");
  if (sense == Sense::backward) std::swap(s, t);
  if (s == t) return 0;
  if (delta == 0) return 0;

  // BFS along out-edges from s, stopping once the frontier depth hits delta.
  std::vector<std::int32_t> dist = bfs_distances(s, Direction::out, delta);
  std::int32_t d = dist[t];
  if (d < 0) return delta;
  return std::min(delta, static_cast<int>(d));
}

std::vector<std::int32_t> DirectedGraph::bfs_distances(NodeId src, Direction dir,
                                                       std::int32_t max_depth) const {
  check_node(src);
  std::vector<std::int32_t> dist(num_nodes_, -1);
  dist[src] = 0;
  std::deque<NodeId> queue{src};
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (max_depth >= 0 && dist[u] >= max_depth) continue;
    for (NodeId v : neighbors(u, dir)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<NodeId> DirectedGraph::bfs_shell(NodeId u, int k) const {
  check_node(u);
  if (k < 1) throw DomainError("bfs_shell: k must be >= 1");
  if (!is_symmetric()) throw ContractError("bfs_shell requires a symmetric graph");
  std::vector<std::int32_t> dist = bfs_distances(u, Direction::out, k);
  std::vector<NodeId> shell;
  for (NodeId v = 0; v < num_nodes_; ++v) {
    if (v != u && dist[v] == k) shell.push_back(v);
  }
  return shell;
}

namespace {

bool parse_node_id(std::string_view tok, NodeId& out) {
  if (tok.empty()) return false;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return false;
  if (value > 0xffffffffULL) return false;
  out = static_cast<NodeId>(value);
  return true;
}

}  // namespace

DirectedGraph load_edge_list(std::istream& in, std::optional<NodeId> num_nodes) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  NodeId max_id = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b)) {
      throw ParseError("edge list line " + std::to_string(line_no) + ": expected \"src dst\"");
    }
    if (ls >> extra) {
      throw ParseError("edge list line " + std::to_string(line_no) + ": trailing token \"" +
                       extra + "\"");
    }
    NodeId src, dst;
    if (!parse_node_id(a, src) || !parse_node_id(b, dst)) {
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": ids must be non-negative integers");
    }
    if (num_nodes && (src >= *num_nodes || dst >= *num_nodes)) {
      throw RangeError("edge list line " + std::to_string(line_no) + ": id >= num_nodes=" +
                       std::to_string(*num_nodes));
    }
    edges.emplace_back(src, dst);
    max_id = std::max({max_id, src, dst});
    any = true;
  }
  NodeId n = num_nodes ? *num_nodes : (any ? max_id + 1 : 0);
  return DirectedGraph::from_edges(n, edges);
}

DirectedGraph load_edge_list_file(const std::string& path, std::optional<NodeId> num_nodes) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open edge list: " + path);
  return load_edge_list(in, num_nodes);
}

void save_edge_list(std::ostream& out, const DirectedGraph& g) {
  for (const Edge& e : g.edges()) {
    out << e.first << ' ' << e.second << '\n';
  }
}

NodeFeatures load_feature_csv(std::istream& in, NodeId num_nodes) {
  std::string line;
  if (!std::getline(in, line)) throw IngestError("feature CSV: empty file");
  // Header row: "id,f0,f1,...". Column count fixes the dimensionality.
  std::size_t dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));

  NodeFeatures f;
  f.num_nodes = num_nodes;
  f.dim = dim;
  f.values.assign(static_cast<std::size_t>(num_nodes) * dim, 0.0);
  std::vector<bool> seen(num_nodes, false);
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    if (!std::getline(ls, cell, ',')) {
      throw IngestError("feature CSV line " + std::to_string(line_no) + ": missing id");
    }
    NodeId id;
    if (!parse_node_id(cell, id) || id >= num_nodes) {
      throw IngestError("feature CSV line " + std::to_string(line_no) + ": bad id \"" + cell +
                        "\"");
    }
    if (seen[id]) {
      throw IngestError("feature CSV line " + std::to_string(line_no) + ": duplicate id " +
                        std::to_string(id));
    }
    seen[id] = true;
    for (std::size_t j = 0; j < dim; ++j) {
      if (!std::getline(ls, cell, ',')) {
        throw IngestError("feature CSV line " + std::to_string(line_no) + ": expected " +
                          std::to_string(dim) + " feature columns");
      }
      double v = 0;
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw IngestError("feature CSV line " + std::to_string(line_no) + ": bad number \"" +
                          cell + "\"");
      }
      if (!std::isfinite(v)) {
        throw IngestError("feature CSV line " + std::to_string(line_no) + ": non-finite value");
      }
      f.values[static_cast<std::size_t>(id) * dim + j] = v;
    }
    ++rows;
  }
  if (rows != num_nodes) {
    throw IngestError("feature CSV: " + std::to_string(rows) + " rows for " +
                      std::to_string(num_nodes) + " nodes");
  }
  return f;
}

NodeFeatures load_feature_csv_file(const std::string& path, NodeId num_nodes) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open feature CSV: " + path);
  return load_feature_csv(in, num_nodes);
}

}  // namespace dirlp
