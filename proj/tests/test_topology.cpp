#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fogsim/topology.hpp"
#include "oracles.hpp"

using namespace fogsim;
namespace ft = fogsim::testing;

namespace {

TopologyGraph star5() {
  TopologyGraph g;
  for (NodeId n = 0; n < 5; ++n) g.add_node({n, 1, 1, {}});
  for (NodeId leaf = 1; leaf < 5; ++leaf) g.add_link({0, leaf, 1, 0, {}});
  return g;
}

}  // namespace

TEST_CASE("nodes keep custom attributes intact") {
  TopologyGraph g;
  AttrMap custom{{"POWERmin", AttrValue(574.0)}, {"POWERmax", AttrValue(646.0)}};
  g.add_node({120, 530, 1, custom});
  g.add_node({12, 100, 10, {}});
  CHECK(g.node(120).ipt == 530);
  CHECK(std::get<double>(g.node(120).custom.at("POWERmin")) == 574.0);
  CHECK(g.node(12).custom.empty());
  CHECK_THROWS_WITH_AS(g.add_node({12, 1, 1, {}}), doctest::Contains("duplicate node id 12"),
                       std::runtime_error);
}

TEST_CASE("remove_node returns the incident links and drops them") {
  TopologyGraph g = star5();
  g.add_link({1, 2, 1, 0, {}});
  const auto removed = g.remove_node(0);
  CHECK(removed.size() == 4);
  CHECK(g.node_count() == 4);
  CHECK(g.link_count() == 1);
  CHECK_FALSE(g.has_link(0, 1));
  CHECK_THROWS(g.remove_node(0));

  TopologyGraph lone;
  lone.add_node({7, 1, 1, {}});
  CHECK(lone.remove_node(7).empty());
}

TEST_CASE("links are undirected and unique per pair") {
  TopologyGraph g;
  g.add_node({1, 1, 1, {}});
  g.add_node({2, 1, 1, {}});
  g.add_link({1, 2, 1000, 1, {}});
  CHECK(g.link(2, 1).bw == 1000);
  CHECK(g.link(2, 1).pr == 1);
  CHECK_THROWS(g.add_link({2, 1, 10, 0, {}}));  // same unordered pair
  CHECK_THROWS(g.add_link({1, 999, 10, 0, {}}));
}

TEST_CASE("referential integrity holds under random mutation sequences") {
  RandomStream rng(77);
  TopologyGraph g;
  int next_id = 0;
  for (int step = 0; step < 400; ++step) {
    const double u = rng.uniform01();
    if (u < 0.4 || g.node_count() < 2) {
      g.add_node({next_id++, 1, 1, {}});
    } else if (u < 0.7) {
      // link two random existing nodes if not already linked
      std::vector<NodeId> ids;
      for (const auto& [id, _] : g.nodes()) ids.push_back(id);
      const NodeId a = ids[rng.next_u64() % ids.size()];
      const NodeId b = ids[rng.next_u64() % ids.size()];
      if (a != b && !g.has_link(a, b)) g.add_link({a, b, 1, 0, {}});
    } else {
      std::vector<NodeId> ids;
      for (const auto& [id, _] : g.nodes()) ids.push_back(id);
      g.remove_node(ids[rng.next_u64() % ids.size()]);
    }
    for (const auto& [key, _] : g.links()) {
      REQUIRE(g.has_node(key.u));
      REQUIRE(g.has_node(key.v));
    }
  }
}

TEST_CASE("generation counter strictly increases on every mutation") {
  TopologyGraph g;
  auto gen = g.generation();
  g.add_node({0, 1, 1, {}});
  CHECK(g.generation() > gen);
  gen = g.generation();
  g.add_node({1, 1, 1, {}});
  CHECK(g.generation() > gen);
  gen = g.generation();
  g.add_link({0, 1, 1, 0, {}});
  CHECK(g.generation() > gen);
  gen = g.generation();
  g.remove_node(1);
  CHECK(g.generation() > gen);
}

TEST_CASE("shortest_paths handles identity, dominance and ties") {
  TopologyGraph g;
  for (NodeId n = 0; n < 4; ++n) g.add_node({n, 1, 1, {}});
  SUBCASE("identity") {
    CHECK(g.shortest_paths(0, 0) == std::vector<std::vector<NodeId>>{{0}});
  }
  SUBCASE("a direct edge dominates a triangle detour") {
    g.add_link({0, 1, 1, 0, {}});
    g.add_link({1, 2, 1, 0, {}});
    g.add_link({0, 2, 1, 0, {}});
    CHECK(g.shortest_paths(0, 2) == std::vector<std::vector<NodeId>>{{0, 2}});
  }
  SUBCASE("the 4-cycle yields both two-hop paths") {
    g.add_link({0, 1, 1, 0, {}});
    g.add_link({1, 2, 1, 0, {}});
    g.add_link({2, 3, 1, 0, {}});
    g.add_link({0, 3, 1, 0, {}});
    const auto expected = ft::oracle_shortest_paths(g, 0, 2);
    REQUIRE(expected.size() == 2);
    CHECK(g.shortest_paths(0, 2) == expected);
    CHECK(g.shortest_paths(0, 2) == std::vector<std::vector<NodeId>>{{0, 1, 2}, {0, 3, 2}});
  }
  SUBCASE("disconnected pair gives an empty set") {
    CHECK(g.shortest_paths(0, 3).empty());
  }
}

TEST_CASE("shortest path set is invariant under node insertion order") {
  // same 5-node graph built in two different insertion orders
  TopologyGraph a, b;
  for (NodeId n = 0; n < 5; ++n) a.add_node({n, 1, 1, {}});
  for (NodeId n = 4; n >= 0; --n) b.add_node({n, 1, 1, {}});
  const std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  for (auto [u, v] : edges) a.add_link({u, v, 1, 0, {}});
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) b.add_link({it->second, it->first, 1, 0, {}});
  CHECK(a.shortest_paths(0, 4) == b.shortest_paths(0, 4));
  CHECK(a.shortest_paths(0, 4) == ft::oracle_shortest_paths(a, 0, 4));
}

TEST_CASE("shortest_path_lex agrees with the smallest enumerated path") {
  const auto g = ft::erdos_graph(24, 0.18, 99);
  for (NodeId s = 0; s < 24; s += 3) {
    for (NodeId t = 1; t < 24; t += 4) {
      const auto all = g.shortest_paths(s, t);
      const auto lex = g.shortest_path_lex(s, t);
      if (all.empty()) {
        CHECK_FALSE(lex.has_value());
      } else {
        REQUIRE(lex.has_value());
        CHECK(*lex == all.front());
      }
    }
  }
}

TEST_CASE("stale-path detection: removed nodes never appear on fresh paths") {
  auto g = ft::erdos_graph(20, 0.25, 3);
  const auto before = g.generation();
  g.remove_node(5);
  CHECK(g.generation() > before);  // a path computed at `before` is detectably stale
  for (NodeId s : {0, 1, 2}) {
    for (NodeId t : {17, 18, 19}) {
      for (const auto& path : g.shortest_paths(s, t)) {
        for (NodeId n : path) CHECK(n != 5);
      }
    }
  }
}

TEST_CASE("betweenness of the star and path graphs") {
  const auto star = star5().betweenness_centrality();
  CHECK(star.at(0) == doctest::Approx(1.0).epsilon(1e-12));
  for (NodeId leaf = 1; leaf < 5; ++leaf) CHECK(star.at(leaf) == doctest::Approx(0.0));

  TopologyGraph path;
  for (NodeId n = 0; n < 3; ++n) path.add_node({n, 1, 1, {}});
  path.add_link({0, 1, 1, 0, {}});
  path.add_link({1, 2, 1, 0, {}});
  const auto scores = path.betweenness_centrality();
  CHECK(scores.at(1) == doctest::Approx(1.0));
  CHECK(scores.at(0) == doctest::Approx(0.0));
  CHECK(scores.at(2) == doctest::Approx(0.0));
}

TEST_CASE("betweenness matches the brute-force oracle on random graphs") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto g = ft::erdos_graph(30, 0.2, seed);
    const auto fast = g.betweenness_centrality();
    const auto slow = ft::oracle_betweenness(g);
    for (const auto& [id, expected] : slow)
      CHECK(fast.at(id) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("topology JSON loader") {
  const char* doc = R"({
    "entity": [
      {"id": 120, "RAM": 1, "IPT": 530, "POWERmin": 574, "POWERmax": 646},
      {"id": 12, "RAM": 10, "IPT": 100}
    ],
    "link": [{"s": 120, "d": 12, "BW": 125, "PR": 1}]
  })";
  const auto g = load_topology(doc);
  CHECK(g.node_count() == 2);
  CHECK(g.link_count() == 1);
  CHECK(std::get<double>(g.node(120).custom.at("POWERmax")) == 646.0);
  CHECK(g.link(12, 120).bw == 125);

  CHECK(load_topology(R"({"entity": []})").node_count() == 0);

  CHECK_THROWS_WITH_AS(
      load_topology(R"({"entity":[{"id":1,"IPT":1,"RAM":1}],"link":[{"s":1,"d":999,"BW":1,"PR":0}]})"),
      doctest::Contains("999"), std::runtime_error);
  CHECK_THROWS_WITH_AS(load_topology(R"({"entity":[{"id":1,"RAM":1}]})"),
                       doctest::Contains("IPT"), std::runtime_error);
}

TEST_CASE("edge list importer") {
  std::istringstream in("# comment\n1 2 1000 1\n2 3 500 0.5\n");
  const auto g = load_edge_list(in);
  CHECK(g.node_count() == 3);
  CHECK(g.link_count() == 2);
  CHECK(g.link(2, 3).bw == 500);
  CHECK(g.node(1).ipt == 1.0);

  std::istringstream bad("1 2 1000\n");
  CHECK_THROWS(load_edge_list(bad));
}
