#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dirlp/digraph.hpp"
#include "dirlp/error.hpp"
#include "dirlp/oracle.hpp"
#include "dirlp/rng.hpp"
#include "test_util.hpp"

using namespace dirlp;

TEST_CASE("load_edge_list parses the toy fixture") {
  std::istringstream in("0 1\n1 2\n# comment\n2 0\n0 3\n");
  DirectedGraph g = load_edge_list(in);
  CHECK(g.num_nodes() == 4);
  CHECK(g.num_edges() == 4);
  CHECK(g.dropped_self_loops() == 0);
}

TEST_CASE("load_edge_list drops self-loops with a count") {
  std::istringstream in("0 0\n");
  DirectedGraph g = load_edge_list(in);
  CHECK(g.num_nodes() == 1);
  CHECK(g.num_edges() == 0);
  CHECK(g.dropped_self_loops() == 1);
}

TEST_CASE("load_edge_list collapses duplicates") {
  std::istringstream in("0 1\n0 1\n");
  DirectedGraph g = load_edge_list(in);
  CHECK(g.num_edges() == 1);
}

TEST_CASE("load_edge_list error paths") {
  std::istringstream bad("0\n");
  CHECK_THROWS_AS(load_edge_list(bad), ParseError);
  std::istringstream trailing("0 1 2\n");
  CHECK_THROWS_AS(load_edge_list(trailing), ParseError);
  std::istringstream negative("0 -1\n");
  CHECK_THROWS_AS(load_edge_list(negative), ParseError);
  std::istringstream out_of_range("0 9\n");
  CHECK_THROWS_AS(load_edge_list(out_of_range, NodeId{4}), RangeError);
}

TEST_CASE("neighbors on the fixture") {
  DirectedGraph g = test::g1();
  CHECK(test::to_vec(g.neighbors(0, Direction::out)) == std::vector<NodeId>{1, 3});
  CHECK(test::to_vec(g.neighbors(0, Direction::in)) == std::vector<NodeId>{2});
  CHECK(test::to_vec(g.neighbors(3, Direction::out)).empty());
  CHECK_THROWS_AS(g.neighbors(4, Direction::out), RangeError);
}

TEST_CASE("symmetrize doubles the fixture and is idempotent") {
  DirectedGraph g = test::g1();
  DirectedGraph s = g.symmetrize();
  CHECK(s.num_edges() == 8);
  CHECK(s.is_symmetric());
  DirectedGraph s2 = s.symmetrize();
  CHECK(s2.edges() == s.edges());

  DirectedGraph empty = DirectedGraph::from_edges(3, {});
  CHECK(empty.symmetrize().num_edges() == 0);
}

TEST_CASE("symmetrize equalizes in and out rows") {
  DirectedGraph s = oracle::random_digraph(17, 0.2, 5).symmetrize();
  for (NodeId u = 0; u < s.num_nodes(); ++u) {
    CHECK(test::to_vec(s.neighbors(u, Direction::in)) ==
          test::to_vec(s.neighbors(u, Direction::out)));
  }
}

TEST_CASE("dual-CSR duality on random graphs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    DirectedGraph g = oracle::random_digraph(20, 0.15, seed);
    for (const Edge& e : g.edges()) {
      auto in_row = g.neighbors(e.second, Direction::in);
      CHECK(std::binary_search(in_row.begin(), in_row.end(), e.first));
    }
    std::size_t in_total = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) in_total += g.in_degree(u);
    CHECK(in_total == g.num_edges());
  }
}

TEST_CASE("truncated_distance on the directed 4-ring") {
  DirectedGraph g = test::ring(4);
  CHECK(g.truncated_distance(0, 3, 5, DirectedGraph::Sense::forward) == 3);
  CHECK(g.truncated_distance(0, 3, 2, DirectedGraph::Sense::forward) == 2);
  CHECK(g.truncated_distance(0, 3, 5, DirectedGraph::Sense::backward) == 1);
  CHECK(g.truncated_distance(2, 2, 7, DirectedGraph::Sense::forward) == 0);
  CHECK_THROWS_AS(g.truncated_distance(0, 9, 3, DirectedGraph::Sense::forward), RangeError);
}

TEST_CASE("unreachable encodes as delta") {
  DirectedGraph g = DirectedGraph::from_edges(3, {{0, 1}});
  CHECK(g.truncated_distance(1, 2, 4, DirectedGraph::Sense::forward) == 4);
  CHECK(g.truncated_distance(0, 2, 0, DirectedGraph::Sense::forward) == 0);
}

TEST_CASE("truncated_distance matches the matrix-power oracle on symmetrized graphs") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    DirectedGraph g = oracle::random_digraph(12, 0.12, 100 + seed).symmetrize();
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 10; ++trial) {
      NodeId s = NodeId(rng.bounded(g.num_nodes()));
      NodeId t = NodeId(rng.bounded(g.num_nodes()));
      int naive = oracle::matrix_power_distance(g, s, t);
      int mine = g.truncated_distance(s, t, int(g.num_nodes()), DirectedGraph::Sense::forward);
      CHECK(mine == (naive < 0 ? int(g.num_nodes()) : naive));
    }
  }
}

TEST_CASE("bfs_shell on the symmetrized fixture") {
  DirectedGraph s = test::g1().symmetrize();
  CHECK(s.bfs_shell(3, 1) == std::vector<NodeId>{0});
  CHECK(s.bfs_shell(3, 2) == std::vector<NodeId>{1, 2});
  CHECK(s.bfs_shell(3, 3).empty());
  CHECK_THROWS_AS(test::g1().bfs_shell(0, 1), ContractError);
  CHECK_THROWS_AS(s.bfs_shell(0, 0), DomainError);
}

TEST_CASE("shells partition") {
  DirectedGraph s = oracle::random_digraph(18, 0.15, 9).symmetrize();
  for (NodeId u = 0; u < 5; ++u) {
    std::vector<bool> seen(s.num_nodes(), false);
    for (int k = 1; k <= 4; ++k) {
      for (NodeId v : s.bfs_shell(u, k)) {
        CHECK(!seen[v]);
        seen[v] = true;
      }
    }
  }
}

TEST_CASE("feature CSV loading") {
  std::istringstream in("id,f0,f1\n0,1.5,2\n1,0,-3\n");
  NodeFeatures f = load_feature_csv(in, 2);
  CHECK(f.dim == 2);
  CHECK(f.row(0)[0] == doctest::Approx(1.5));
  CHECK(f.row(1)[1] == doctest::Approx(-3));

  std::istringstream missing("id,f0\n0,1\n");
  CHECK_THROWS_AS(load_feature_csv(missing, 2), IngestError);
  std::istringstream nan_row("id,f0\n0,nan\n");
  CHECK_THROWS_AS(load_feature_csv(nan_row, 1), IngestError);
}
