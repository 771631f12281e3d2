#include <doctest.h>

#include <numeric>

#include "fixtures.hpp"
#include "relcheck/error.hpp"
#include "relcheck/graph.hpp"

using namespace relcheck;

TEST_CASE("build_graph collapses duplicate edges") {
  auto g = fixtures::graph({"a", "b"}, {{"a", "b"}, {"a", "b"}});
  CHECK(g.edge_count() == 1);
}

TEST_CASE("build_graph drops self-loops") {
  auto g = fixtures::graph({"a"}, {{"a", "a"}});
  CHECK(g.node_count() == 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("build_graph rejects unknown endpoints") {
  try {
    fixtures::graph({"a", "b"}, {{"a", "c"}});
    FAIL("expected UnknownEndpoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownEndpoint);
  }
}

TEST_CASE("node order is lexicographic and duplicates collapse") {
  auto g = fixtures::graph({"zeta", "alpha", "Mu", "alpha"}, {});
  REQUIRE(g.node_count() == 3);
  CHECK(g.name(0) == "Mu");
  CHECK(g.name(1) == "alpha");
  CHECK(g.name(2) == "zeta");
  CHECK(g.find("alpha") == NodeId{1});
  CHECK_FALSE(g.find("beta").has_value());
}

TEST_CASE("degrees") {
  SUBCASE("fan out") {
    auto g = fixtures::graph({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
    auto d = degrees(g);
    CHECK(d[0] == Degree{0, 2});
    CHECK(d[1] == Degree{1, 0});
    CHECK(d[2] == Degree{1, 0});
  }
  SUBCASE("empty edge set") {
    auto g = fixtures::graph({"a", "b", "c"}, {});
    for (const auto& d : degrees(g)) CHECK(d == Degree{0, 0});
  }
  SUBCASE("reciprocal pair") {
    auto g = fixtures::graph({"a", "b"}, {{"a", "b"}, {"b", "a"}});
    auto d = degrees(g);
    CHECK(d[0] == Degree{1, 1});
    CHECK(d[1] == Degree{1, 1});
  }
}

TEST_CASE("edge_set and set algebra") {
  auto ab = fixtures::graph({"a", "b", "c"}, {{"a", "b"}});
  auto bc = fixtures::with_edges(ab, {{"b", "c"}});
  auto empty = fixtures::with_edges(ab, {});

  REQUIRE(edge_set(ab).size() == 1);
  CHECK(edge_set(ab)[0] == Edge{0, 1});
  CHECK(edge_set(empty).empty());

  const auto u = edge_union(edge_set(ab), edge_set(bc));
  CHECK(u == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(edge_intersection(edge_set(ab), edge_set(bc)).empty());
  CHECK(edge_difference(u, edge_set(bc)) == std::vector<Edge>{{0, 1}});
  CHECK(shared_edge_count(u, edge_set(ab)) == 1);
}

TEST_CASE("universe mismatch is detected") {
  auto a = fixtures::graph({"a", "b"}, {});
  auto b = fixtures::graph({"a", "c"}, {});
  CHECK_FALSE(a.same_universe(b));
  CHECK_THROWS_AS(require_same_universe(a, b), Error);
  // Equal content in separately built universes still matches.
  CHECK(a.same_universe(fixtures::graph({"b", "a"}, {})));
}

TEST_CASE("graph invariants hold on random graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = fixtures::random_graph(3 + seed % 12, 0.3, seed);
    const auto d = degrees(g);
    const auto in = std::accumulate(d.begin(), d.end(), std::size_t{0}, [](auto s, auto x) { return s + x.in; });
    const auto out = std::accumulate(d.begin(), d.end(), std::size_t{0}, [](auto s, auto x) { return s + x.out; });
    CHECK(in == g.edge_count());
    CHECK(out == g.edge_count());

    std::vector<std::string> nodes(g.nodes().begin(), g.nodes().end());
    const auto named = g.named_edges();
    CHECK(DirectedGraph::build(nodes, named) == g);

    for (NodeId u = 0; u < g.node_count(); ++u) {
      CHECK_FALSE(g.has_edge(u, u));
      for (NodeId v = 0; v < g.node_count(); ++v) {
        const bool listed = std::binary_search(g.edges().begin(), g.edges().end(), Edge{u, v});
        CHECK(g.has_edge(u, v) == listed);
      }
      for (NodeId v : g.out_neighbors(u)) CHECK(g.has_edge(u, v));
      for (NodeId v : g.in_neighbors(u)) CHECK(g.has_edge(v, u));
    }
  }
}
