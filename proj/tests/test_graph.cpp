#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>

#include "nlpr/graph.hpp"
#include "nlpr/graphgen.hpp"
#include "nlpr/io.hpp"
#include "nlpr/rng.hpp"

using namespace nlpr;

TEST_CASE("fromEdgeList builds nodes in first-appearance order") {
  const Digraph g = fromEdgeList({{"a", "b"}, {"b", "c"}}, /*directed=*/true);
  CHECK(g.nodeCount() == 3);
  CHECK(g.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.arcCount() == 2);
  CHECK(g.hasArc(0, 1));
  CHECK(g.hasArc(1, 2));
  CHECK_FALSE(g.hasArc(1, 0));
}

TEST_CASE("undirected input inserts both orientations") {
  const Digraph g = fromEdgeList({{"a", "b"}}, /*directed=*/false);
  CHECK(g.arcCount() == 2);
  CHECK(g.hasArc(0, 1));
  CHECK(g.hasArc(1, 0));
}

TEST_CASE("self-loops are dropped and counted, duplicates collapse") {
  const Digraph g = fromEdgeList({{"a", "a"}, {"a", "b"}, {"a", "b"}}, /*directed=*/true);
  CHECK(g.nodeCount() == 2);
  CHECK(g.arcCount() == 1);
  CHECK(g.loopsDropped() == 1);
}

TEST_CASE("empty edge list is an error") {
  CHECK_THROWS_WITH_AS(fromEdgeList({}, true), "empty edge list", std::invalid_argument);
}

TEST_CASE("out-degrees") {
  SUBCASE("directed path") {
    const Vector d = outDegrees(pathGraph(3));
    CHECK(d[0] == 1);
    CHECK(d[1] == 1);
    CHECK(d[2] == 0);
  }
  SUBCASE("complete digraph K3") {
    const Vector d = outDegrees(completeDigraph(3));
    CHECK(d.sum() == 6);
    CHECK(d.minCoeff() == 2);
    CHECK(d.maxCoeff() == 2);
  }
  SUBCASE("zachary has degree sum 156") {
    std::ifstream in(NLPR_DATA_DIR "/zachary.tsv");
    REQUIRE(in.good());
    const Digraph g = readEdgeList(in, /*directed=*/false);
    CHECK(g.nodeCount() == 34);
    CHECK(g.arcCount() == 156);  // 78 undirected edges
    CHECK(outDegrees(g).sum() == 156);
  }
}

TEST_CASE("out-degrees sum to arc count on random directed graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Digraph g = erdosRenyi(30, 0.1, seed, /*directed=*/true);
    CHECK(outDegrees(g).sum() == static_cast<double>(g.arcCount()));
  }
}

TEST_CASE("aggregate unions layers") {
  SUBCASE("two layers") {
    const MultilayerGraph m(3, {{{0, 1}}, {{1, 2}}});
    const Digraph g = aggregate(m);
    CHECK(g.arcCount() == 4);
    CHECK(g.hasArc(0, 1));
    CHECK(g.hasArc(1, 0));
    CHECK(g.hasArc(1, 2));
    CHECK(g.hasArc(2, 1));
  }
  SUBCASE("identical layers collapse") {
    const MultilayerGraph m(2, {{{0, 1}}, {{0, 1}}});
    CHECK(aggregate(m).arcCount() == 2);
  }
  SUBCASE("toy tube: line A 0-1-2, line B 2-3") {
    const MultilayerGraph m(4, {{{0, 1}, {1, 2}}, {{2, 3}}});
    CHECK(aggregate(m).arcCount() == 6);  // 3 undirected edges
  }
}

TEST_CASE("aggregate contains every layer's edges") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(uniformIndex(rng, 8));
    const int k = 1 + static_cast<int>(uniformIndex(rng, 4));
    std::vector<std::vector<std::pair<int, int>>> layers(static_cast<std::size_t>(k));
    for (auto& layer : layers) {
      const int edges = 1 + static_cast<int>(uniformIndex(rng, 10));
      for (int e = 0; e < edges; ++e) {
        const int i = static_cast<int>(uniformIndex(rng, static_cast<std::uint64_t>(n)));
        const int j = static_cast<int>(uniformIndex(rng, static_cast<std::uint64_t>(n)));
        if (i != j) layer.emplace_back(i, j);
      }
    }
    bool any = false;
    for (const auto& layer : layers) any = any || !layer.empty();
    if (!any) continue;
    const MultilayerGraph m(n, layers);
    const Digraph g = aggregate(m);
    for (int l = 0; l < m.layerCount(); ++l)
      for (auto [i, j] : m.layerEdges(l)) {
        CHECK(g.hasArc(i, j));
        CHECK(g.hasArc(j, i));
      }
  }
}

TEST_CASE("strong connectivity") {
  CHECK(isStronglyConnected(cycleGraph(3, /*directed=*/true)));
  CHECK_FALSE(isStronglyConnected(pathGraph(3)));
  SUBCASE("two disjoint cycles") {
    std::vector<std::tuple<int, int, double>> arcs = {{0, 1, 1}, {1, 0, 1}, {2, 3, 1}, {3, 2, 1}};
    CHECK_FALSE(isStronglyConnected(Digraph(4, arcs)));
  }
}

TEST_CASE("edge-list round trip is the identity on deduplicated graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const bool directed = trial % 2 == 0;
    const Digraph g = erdosRenyi(12, 0.25, 100 + static_cast<std::uint64_t>(trial), directed);
    if (g.arcCount() == 0) continue;
    std::stringstream buffer;
    writeEdgeList(g, buffer);
    const Digraph back = readEdgeList(buffer, directed);
    REQUIRE(back.nodeCount() <= g.nodeCount());  // isolated nodes have no rows
    // compare label-keyed edge sets
    std::set<std::pair<std::string, std::string>> a, b;
    for (auto [u, v] : g.arcs())
      if (g.outArcs(u).size() > 0) a.emplace(g.label(u), g.label(v));
    for (auto [u, v] : back.arcs()) b.emplace(back.label(u), back.label(v));
    CHECK(a == b);
  }
}

TEST_CASE("withUnitsRemoved removes both orientations on undirected graphs") {
  const Digraph g = fromEdgeList({{"a", "b"}, {"b", "c"}, {"c", "a"}}, /*directed=*/false);
  const std::vector<std::pair<int, int>> units = {{0, 1}};
  const Digraph h = withUnitsRemoved(g, units);
  CHECK(h.arcCount() == 4);
  CHECK_FALSE(h.hasArc(0, 1));
  CHECK_FALSE(h.hasArc(1, 0));
  CHECK(h.hasArc(1, 2));
}

TEST_CASE("multilayer membership follows edge incidence") {
  const MultilayerGraph m(4, {{{0, 1}, {1, 2}}, {{2, 3}}});
  CHECK(m.memberOf(2, 0));
  CHECK(m.memberOf(2, 1));
  CHECK_FALSE(m.memberOf(0, 1));
  CHECK_FALSE(m.memberOf(3, 0));
}
