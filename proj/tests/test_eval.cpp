#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dirlp/error.hpp"
#include "dirlp/eval.hpp"
#include "dirlp/featurize.hpp"
#include "dirlp/oracle.hpp"
#include "dirlp/rng.hpp"
#include "test_util.hpp"

using namespace dirlp;
using eval::TiePolicy;

TEST_CASE("rank_of_positive fixtures") {
  CHECK(eval::rank_of_positive(0.9, {0.1, 0.5}, TiePolicy::optimistic) == 1.0);
  CHECK(eval::rank_of_positive(0.9, {0.1, 0.5}, TiePolicy::mid) == 1.0);
  CHECK(eval::rank_of_positive(0.9, {0.1, 0.5}, TiePolicy::pessimistic) == 1.0);
  CHECK(eval::rank_of_positive(0.5, {0.5, 0.5, 0.2}, TiePolicy::mid) == 2.0);
  CHECK(eval::rank_of_positive(0.5, {0.5, 0.5, 0.2}, TiePolicy::pessimistic) == 3.0);
  CHECK(eval::rank_of_positive(0.5, {0.5, 0.5, 0.2}, TiePolicy::optimistic) == 1.0);
  CHECK_THROWS_AS(eval::rank_of_positive(std::nan(""), {0.1}, TiePolicy::mid), NumericError);
  CHECK_THROWS_AS(eval::rank_of_positive(0.5, {std::nan("")}, TiePolicy::mid), NumericError);
}

TEST_CASE("mrr fixtures") {
  CHECK(eval::mrr({1}) == 1.0);
  CHECK(eval::mrr({1, 2, 4}) == doctest::Approx(7.0 / 12.0));
  CHECK(eval::mrr({1, 2, 4}) == 7.0 / 12.0);  // exact in binary
  CHECK(eval::mrr({1e6}) == doctest::Approx(0.0).epsilon(1e-5));
  CHECK_THROWS_AS(eval::mrr({}), ContractError);
  CHECK_THROWS_AS(eval::mrr({0.5}), ContractError);
}

TEST_CASE("hits_at_k fixtures") {
  CHECK(eval::hits_at_k({1, 21}, 20) == 0.5);
  CHECK(eval::hits_at_k({20}, 20) == 1.0);
  CHECK(eval::hits_at_k({5, 5, 5}, 4) == 0.0);
  CHECK_THROWS_AS(eval::hits_at_k({}, 20), ContractError);
  CHECK_THROWS_AS(eval::hits_at_k({1}, 0), ContractError);
}

TEST_CASE("hits is monotone in k and metrics stay in range") {
  SplitMix64 rng(2);
  std::vector<double> ranks;
  for (int i = 0; i < 50; ++i) ranks.push_back(1.0 + double(rng.bounded(40)));
  double prev = 0;
  for (int k = 1; k <= 45; ++k) {
    double h = eval::hits_at_k(ranks, k);
    CHECK(h >= prev);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
    prev = h;
  }
  double m = eval::mrr(ranks);
  CHECK(m > 0.0);
  CHECK(m <= 1.0);
}

TEST_CASE("evaluate: indicator scorer ranks every positive first") {
  DirectedGraph g = DirectedGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  auto scorer = eval::batched([&g](NodeId u, NodeId v) { return g.has_edge(u, v) ? 1.0 : 0.0; });
  eval::Protocol protocol;
  protocol.candidates = 3;
  protocol.tie_policy = TiePolicy::mid;
  protocol.seed = 4;
  eval::RankingReport report = eval::evaluate(scorer, g.edges(), g, protocol);
  CHECK(report.mrr_value == 1.0);
  CHECK(report.hits_value == 1.0);
  for (const auto& r : report.per_edge) CHECK(r.rank == 1.0);
}

TEST_CASE("evaluate: constant scorer under the mid policy") {
  DirectedGraph g = oracle::random_digraph(40, 0.08, 6);
  REQUIRE(g.num_edges() >= 5);
  std::vector<Edge> positives(g.edges().begin(), g.edges().begin() + 5);
  auto scorer = eval::batched([](NodeId, NodeId) { return 0.25; });
  eval::Protocol protocol;
  protocol.candidates = 9;
  protocol.tie_policy = TiePolicy::mid;
  eval::RankingReport report = eval::evaluate(scorer, positives, g, protocol);
  CHECK(report.mrr_value == 1.0 / (1.0 + 9.0 / 2.0));
}

TEST_CASE("evaluate matches the full-sort oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    DirectedGraph g = oracle::random_digraph(25, 0.2, 70 + seed);
    if (g.num_edges() < 6) continue;
    std::vector<Edge> positives(g.edges().begin(), g.edges().begin() + 6);
    auto scorer = eval::batched([](NodeId u, NodeId v) { return double((3 * u + v) % 7); });
    for (TiePolicy policy : {TiePolicy::optimistic, TiePolicy::mid, TiePolicy::pessimistic}) {
      eval::Protocol protocol;
      protocol.candidates = 12;
      protocol.hits_k = 5;
      protocol.tie_policy = policy;
      protocol.seed = seed;
      eval::RankingReport fast = eval::evaluate(scorer, positives, g, protocol);
      oracle::NaiveRanking naive = oracle::evaluate(scorer, positives, g, protocol);
      CHECK(fast.mrr_value == doctest::Approx(naive.mrr).epsilon(1e-12));
      CHECK(fast.hits_value == doctest::Approx(naive.hits).epsilon(1e-12));
    }
  }
}

TEST_CASE("ranks are invariant under strictly increasing transforms") {
  DirectedGraph g = oracle::random_digraph(20, 0.2, 13);
  REQUIRE(g.num_edges() >= 4);
  std::vector<Edge> positives(g.edges().begin(), g.edges().begin() + 4);
  auto base = [](NodeId u, NodeId v) { return std::sin(double(u)) + 0.3 * double(v % 5); };
  auto scorer1 = eval::batched(base);
  auto scorer2 = eval::batched([&base](NodeId u, NodeId v) {
    return 3.0 * std::atan(base(u, v)) + 2.0;  // strictly increasing
  });
  eval::Protocol protocol;
  protocol.candidates = 10;
  protocol.seed = 17;
  eval::RankingReport a = eval::evaluate(scorer1, positives, g, protocol);
  eval::RankingReport b = eval::evaluate(scorer2, positives, g, protocol);
  for (std::size_t i = 0; i < a.per_edge.size(); ++i) {
    CHECK(a.per_edge[i].rank == b.per_edge[i].rank);
  }
  CHECK(a.mrr_value == b.mrr_value);
  CHECK(a.hits_value == b.hits_value);
}

TEST_CASE("tie policy ordering: optimistic >= mid >= pessimistic MRR") {
  DirectedGraph g = oracle::random_digraph(22, 0.2, 31);
  REQUIRE(g.num_edges() >= 5);
  std::vector<Edge> positives(g.edges().begin(), g.edges().begin() + 5);
  auto scorer = eval::batched([](NodeId u, NodeId v) { return double((u + v) % 3); });
  auto run = [&](TiePolicy policy) {
    eval::Protocol protocol;
    protocol.candidates = 15;
    protocol.tie_policy = policy;
    protocol.seed = 23;
    return eval::evaluate(scorer, positives, g, protocol).mrr_value;
  };
  double opt = run(TiePolicy::optimistic);
  double mid = run(TiePolicy::mid);
  double pes = run(TiePolicy::pessimistic);
  CHECK(opt >= mid);
  CHECK(mid >= pes);
}

TEST_CASE("rank CSV dump") {
  eval::RankingReport report;
  report.per_edge.push_back({{2, 5}, 4.0, 10, false});
  std::ostringstream os;
  eval::write_rank_csv(os, report);
  CHECK(os.str() == "u,v,rank,reciprocal\n2,5,4,0.25\n");
}

TEST_CASE("expressivity report") {
  eval::ExpressivityReport report = eval::expressivity_check_k4();
  CHECK(!report.sgnn_distinguishes);
  CHECK(report.dirlp_distinguishes);
  CHECK(report.lr_prefix_01 == std::vector<double>{2, 1, 1, 2});
  CHECK(report.lr_prefix_03 == std::vector<double>{2, 1, 3, 1});
  std::string json_text = report.to_json();
  CHECK(json_text.find("\"sgnn_distinguishes\": false") != std::string::npos);
  CHECK(json_text.find("\"dirlp_distinguishes\": true") != std::string::npos);

  // The fixture is a complete digraph: every vertex pair connected some way.
  DirectedGraph g = DirectedGraph::from_edges(4, report.fixture_edges);
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = u + 1; v < 4; ++v) {
      CHECK((g.has_edge(u, v) || g.has_edge(v, u)));
    }
}

TEST_CASE("undirected K4 has identical features on all six edges") {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = 0; v < 4; ++v) {
      if (u != v) edges.emplace_back(u, v);
    }
  DirectedGraph k4 = DirectedGraph::from_edges(4, edges);
  auto first = featurize::directed_edge_features(k4, 0, 1, 1);
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = 0; v < 4; ++v) {
      if (u == v) continue;
      CHECK(featurize::directed_edge_features(k4, u, v, 1) == first);
    }
}
