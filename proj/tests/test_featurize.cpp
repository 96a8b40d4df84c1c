#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <thread>

#include "dirlp/error.hpp"
#include "dirlp/featurize.hpp"
#include "dirlp/oracle.hpp"
#include "dirlp/rng.hpp"
#include "test_util.hpp"

using namespace dirlp;
namespace ftz = dirlp::featurize;

TEST_CASE("canonical sequence family: size and order") {
  auto seqs = ftz::canonical_sequences(2);
  REQUIRE(seqs.size() == 6);  // 2^(N+1) - 2
  CHECK(ftz::sequence_name(seqs[0]) == "in");
  CHECK(ftz::sequence_name(seqs[1]) == "out");
  CHECK(ftz::sequence_name(seqs[2]) == "in.in");
  CHECK(ftz::sequence_name(seqs[3]) == "in.out");
  CHECK(ftz::sequence_name(seqs[4]) == "out.in");
  CHECK(ftz::sequence_name(seqs[5]) == "out.out");
  CHECK(ftz::canonical_sequences(3).size() == 14);
}

TEST_CASE("sequence_neighborhood on the fixture") {
  DirectedGraph g = test::g1();
  using D = Direction;
  CHECK(ftz::sequence_neighborhood(g, 0, {D::out}) == std::vector<NodeId>{1, 3});
  CHECK(ftz::sequence_neighborhood(g, 0, {D::out, D::out}) == std::vector<NodeId>{2});
  // Walks may return: in(0) = {2}, out(2) = {0}.
  CHECK(ftz::sequence_neighborhood(g, 0, {D::in, D::out}) == std::vector<NodeId>{0});
}

TEST_CASE("sequence_neighborhood matches explicit walk enumeration") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DirectedGraph g = oracle::random_digraph(12, 0.25, 60 + seed);
    for (const auto& s : ftz::canonical_sequences(3)) {
      for (NodeId u = 0; u < g.num_nodes(); u += 3) {
        CHECK(ftz::sequence_neighborhood(g, u, s) == oracle::sequence_neighborhood(g, u, s));
      }
    }
  }
}

TEST_CASE("on a symmetric graph sequence sets depend only on length") {
  DirectedGraph s = oracle::random_digraph(14, 0.2, 8).symmetrize();
  auto seqs = ftz::canonical_sequences(3);
  for (NodeId u = 0; u < s.num_nodes(); u += 2) {
    for (const auto& a : seqs)
      for (const auto& b : seqs) {
        if (a.size() != b.size()) continue;
        CHECK(ftz::sequence_neighborhood(s, u, a) == ftz::sequence_neighborhood(s, u, b));
      }
  }
}

TEST_CASE("feature dimensions") {
  CHECK(ftz::directed_feature_dim(1) == 12);
  CHECK(ftz::directed_feature_dim(2) == 84);
  CHECK(ftz::undirected_feature_dim(1) == 4);
  CHECK(ftz::undirected_feature_dim(2) == 8);

  DirectedGraph g = test::g1();
  CHECK(ftz::directed_edge_features(g, 0, 1, 1).size() == 12);
  CHECK(ftz::directed_edge_features(g, 0, 1, 2).size() == 84);
  auto both = ftz::edge_features(g, 0, 1, 1);
  CHECK(both.z().size() == 16);
  CHECK(ftz::edge_features(g, 0, 1, 2).z().size() == 92);
}

TEST_CASE("undirected features on the symmetrized fixture follow the shell definition") {
  DirectedGraph g = test::g1();
  // Shells at k=1: N(1) = {0,2}, N(3) = {0}. Union 2, intersection 1,
  // left 2, right 1 (inclusion-exclusion pins U = L + R - I).
  auto z = ftz::undirected_edge_features(g, 1, 3, 1);
  CHECK(z == std::vector<double>{2, 1, 2, 1});
  CHECK(z[0] == z[2] + z[3] - z[1]);
}

TEST_CASE("identical shells collapse union onto intersection") {
  // 3 and 4 both attach to exactly {0, 1}.
  DirectedGraph g = DirectedGraph::from_edges(5, {{3, 0}, {3, 1}, {4, 0}, {4, 1}});
  auto z = ftz::undirected_edge_features(g, 3, 4, 1);
  CHECK(z[0] == z[1]);  // union == intersection
  CHECK(z[2] == z[3]);
}

TEST_CASE("swapping the pair exchanges L and R quarters and fixes U, I") {
  DirectedGraph g = oracle::random_digraph(13, 0.3, 4);
  const int radius = 1;
  auto zuv = ftz::undirected_edge_features(g, 2, 7, radius);
  auto zvu = ftz::undirected_edge_features(g, 7, 2, radius);
  CHECK(zuv[0] == zvu[0]);
  CHECK(zuv[1] == zvu[1]);
  CHECK(zuv[2] == zvu[3]);
  CHECK(zuv[3] == zvu[2]);
}

TEST_CASE("directed features match the naive oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    DirectedGraph g = oracle::random_digraph(11, 0.3, 90 + seed);
    CHECK(ftz::directed_edge_features(g, 1, 5, 2) == oracle::directed_edge_features(g, 1, 5, 2));
    CHECK(ftz::undirected_edge_features(g, 1, 5, 2) ==
          oracle::undirected_edge_features(g, 1, 5, 2));
  }
}

TEST_CASE("edge feature preconditions") {
  DirectedGraph g = test::g1();
  CHECK_THROWS_AS(ftz::directed_edge_features(g, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(ftz::undirected_edge_features(g, 0, 0, 1), DomainError);
  CHECK_THROWS_AS(ftz::directed_edge_features(g, 0, 1, 0), DomainError);
}

TEST_CASE("distance encoding labels on the directed 4-ring") {
  DirectedGraph g = test::ring(4);
  auto labels = ftz::distance_encoding_labels(g, {0}, ftz::LabelMode::de_k, 3, true);
  REQUIRE(labels.dim == 2);
  // Forward column d(0, v), backward column d(v, 0).
  CHECK(labels.row(0)[0] == 0);
  CHECK(labels.row(1)[0] == 1);
  CHECK(labels.row(2)[0] == 2);
  CHECK(labels.row(3)[0] == 3);
  CHECK(labels.row(0)[1] == 0);
  CHECK(labels.row(1)[1] == 3);
  CHECK(labels.row(2)[1] == 2);
  CHECK(labels.row(3)[1] == 1);

  auto truncated = ftz::distance_encoding_labels(g, {0}, ftz::LabelMode::de_k, 2, true);
  CHECK(truncated.row(3)[0] == 2);
  CHECK(truncated.row(1)[1] == 2);
}

TEST_CASE("landmark labels itself as 0 in every mode") {
  DirectedGraph g = test::g1();
  for (bool directed : {true, false}) {
    auto dek = ftz::distance_encoding_labels(g, {2}, ftz::LabelMode::de_k, 5, directed);
    auto delog = ftz::distance_encoding_labels(g, {2}, ftz::LabelMode::de_log, 0, directed);
    for (std::size_t c = 0; c < dek.dim; ++c) CHECK(dek.row(2)[c] == 0);
    for (std::size_t c = 0; c < delog.dim; ++c) CHECK(delog.row(2)[c] == 0);
  }
}

TEST_CASE("de-log maps unreachable to ln(1+n)") {
  DirectedGraph g = DirectedGraph::from_edges(3, {{0, 1}});
  auto labels = ftz::distance_encoding_labels(g, {0}, ftz::LabelMode::de_log, 0, true);
  CHECK(labels.row(2)[0] == doctest::Approx(std::log1p(3.0)));
  CHECK(labels.row(1)[0] == doctest::Approx(std::log1p(1.0)));
}

TEST_CASE("undirected labels use the symmetrized graph") {
  DirectedGraph g = test::ring(4);
  auto labels = ftz::distance_encoding_labels(g, {0}, ftz::LabelMode::de_k, 5, false);
  REQUIRE(labels.dim == 1);
  CHECK(labels.row(3)[0] == 1);  // 3-0 is one hop once symmetrized
  CHECK(labels.row(2)[0] == 2);
}

TEST_CASE("de-k label monotonicity in delta") {
  DirectedGraph g = oracle::random_digraph(15, 0.15, 21);
  auto lo = ftz::distance_encoding_labels(g, {0, 3}, ftz::LabelMode::de_k, 2, true);
  auto hi = ftz::distance_encoding_labels(g, {0, 3}, ftz::LabelMode::de_k, 5, true);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (std::size_t c = 0; c < lo.dim; ++c) {
      if (lo.row(v)[c] < 2) CHECK(lo.row(v)[c] == hi.row(v)[c]);
    }
  }
}

TEST_CASE("select_landmarks on the fixture") {
  DirectedGraph g = test::g1();
  CHECK(ftz::select_landmarks(g, 1) == std::vector<NodeId>{0});
  // Max out-degree is 0; in-degrees all tie at 1, smallest unused id is 1.
  CHECK(ftz::select_landmarks(g, 2) == std::vector<NodeId>{0, 1});
  CHECK_THROWS_AS(ftz::select_landmarks(g, 5), ContractError);
}

TEST_CASE("select_landmarks ignores edge input order") {
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 2}, {1, 3}};
  DirectedGraph a = DirectedGraph::from_edges(4, edges);
  std::reverse(edges.begin(), edges.end());
  DirectedGraph b = DirectedGraph::from_edges(4, edges);
  CHECK(ftz::select_landmarks(a, 3) == ftz::select_landmarks(b, 3));
}

TEST_CASE("expressivity witness: directed features split the K4 edges") {
  // Complete 4-node digraph reconstructed from the documented degree
  // readings (in/out of 0: 2/1, of 1: 1/2, of 3: 3/1).
  DirectedGraph g = DirectedGraph::from_edges(
      4, {{0, 3}, {1, 0}, {1, 3}, {2, 0}, {2, 1}, {2, 3}, {3, 2}});
  auto dir01 = ftz::directed_edge_features(g, 0, 1, 1);
  auto dir03 = ftz::directed_edge_features(g, 0, 3, 1);
  auto undir01 = ftz::undirected_edge_features(g, 0, 1, 1);
  auto undir03 = ftz::undirected_edge_features(g, 0, 3, 1);
  CHECK(dir01 != dir03);
  CHECK(undir01 == undir03);
  // L || R prefix after the two 2x2 blocks.
  CHECK(std::vector<double>(dir01.begin() + 8, dir01.end()) ==
        std::vector<double>{2, 1, 1, 2});
  CHECK(std::vector<double>(dir03.begin() + 8, dir03.end()) ==
        std::vector<double>{2, 1, 3, 1});
}

TEST_CASE("featurizer caches and tolerates concurrent extraction") {
  DirectedGraph g = oracle::random_digraph(20, 0.2, 33);
  ftz::EdgeFeaturizer featurizer(g, 2);
  std::vector<Edge> pairs;
  for (NodeId u = 0; u < 20; ++u)
    for (NodeId v = 0; v < 20; ++v) {
      if (u != v) pairs.emplace_back(u, v);
    }
  std::vector<std::thread> pool;
  for (int w = 0; w < 4; ++w) {
    pool.emplace_back([&featurizer, &pairs, w] {
      for (std::size_t i = w; i < pairs.size(); i += 4) {
        featurizer.features(pairs[i].first, pairs[i].second);
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const Edge& e : pairs) {
    // Pairs that are themselves edges are featurized with that edge
    // masked, exactly as if it were absent from the graph.
    if (g.has_edge(e.first, e.second)) {
      std::vector<Edge> rest;
      for (const Edge& other : g.edges()) {
        if (other != e) rest.push_back(other);
      }
      DirectedGraph without = DirectedGraph::from_edges(g.num_nodes(), rest);
      auto expect = ftz::edge_features(without, e.first, e.second, 2).z();
      CHECK(featurizer.features(e.first, e.second) == expect);
    } else {
      auto expect = ftz::edge_features(g, e.first, e.second, 2).z();
      CHECK(featurizer.features(e.first, e.second) == expect);
    }
  }
}

TEST_CASE("feature CSV export carries canonical column names") {
  DirectedGraph g = test::g1();
  std::ostringstream os;
  ftz::write_feature_csv(os, g, {{0, 1}, {1, 3}}, 1);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header.rfind("u,v,U(in|in),", 0) == 0);
  CHECK(header.find("L(in)") != std::string::npos);
  CHECK(header.find("uR(1)") != std::string::npos);
  std::string row;
  int rows = 0;
  while (std::getline(is, row)) ++rows;
  CHECK(rows == 2);
}
