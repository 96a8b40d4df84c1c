#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirlp/datasets.hpp"
#include "dirlp/featurize.hpp"
#include "test_util.hpp"

using namespace dirlp;

TEST_CASE("directed ring") {
  DirectedGraph g = datasets::make_directed_ring(5);
  CHECK(g.num_edges() == 5);
  CHECK(g.has_edge(4, 0));
  CHECK(!g.has_edge(0, 4));
  CHECK(datasets::bidirectional_pair_ratio(g) == 0.0);
  CHECK(datasets::density(g) == doctest::Approx(5.0 / 20.0));
}

TEST_CASE("closure digraph hits the requested mutual ratio and is seeded") {
  DirectedGraph g = datasets::make_closure_digraph(300, 400, 3600, 0.26, 12345);
  CHECK(g.num_edges() > 4000);
  CHECK(datasets::bidirectional_pair_ratio(g) == doctest::Approx(0.26).epsilon(0.02));
  DirectedGraph again = datasets::make_closure_digraph(300, 400, 3600, 0.26, 12345);
  CHECK(again.edges() == g.edges());
  DirectedGraph other = datasets::make_closure_digraph(300, 400, 3600, 0.26, 7);
  CHECK(other.edges() != g.edges());

  // Closure edges carry their defining transitive 2-path: directed
  // triangles must be plentiful.
  std::size_t supported = 0;
  std::size_t checked = 0;
  for (const Edge& e : g.edges()) {
    if (++checked > 500) break;
    bool found = false;
    for (NodeId t : g.neighbors(e.first, Direction::out)) {
      if (t != e.second && g.has_edge(t, e.second)) {
        found = true;
        break;
      }
    }
    if (found) ++supported;
  }
  CHECK(double(supported) / double(checked - 1) > 0.5);
}

TEST_CASE("citation digraph: copying closes directed triangles") {
  DirectedGraph g = datasets::make_citation_digraph(200, 8, 0.8, 60, 0.15, 3);
  CHECK(g.num_edges() > 500);
  // References always point to earlier nodes except for reciprocals.
  std::size_t forward = 0;
  for (const Edge& e : g.edges()) {
    if (e.second < e.first) ++forward;
  }
  CHECK(double(forward) / double(g.num_edges()) > 0.8);
  DirectedGraph again = datasets::make_citation_digraph(200, 8, 0.8, 60, 0.15, 3);
  CHECK(again.edges() == g.edges());
}
