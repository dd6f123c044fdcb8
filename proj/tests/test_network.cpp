#include "attsp/network.hpp"

#include <random>
#include <set>

#include "attsp/errors.hpp"
#include "attsp/time_util.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace attsp;

namespace {

RawPost mention_post(const std::string& author,
                     const std::vector<std::string>& mentions,
                     const std::string& id) {
  RawPost p;
  p.id = id;
  p.author_id = author;
  p.timestamp = parse_iso8601("2017-01-01T00:00:00Z");
  p.text = "hola";
  p.kind = PostKind::original;
  p.mentioned_author_ids = mentions;
  return p;
}

RawPost retweet_post(const std::string& author, const std::string& orig,
                     const std::string& id) {
  RawPost p;
  p.id = id;
  p.author_id = author;
  p.timestamp = parse_iso8601("2017-01-01T00:00:00Z");
  p.text = "rt";
  p.kind = PostKind::retweet;
  p.retweeted_author_id = orig;
  return p;
}

int weight_of(const InteractionGraph& g, const std::string& src,
              const std::string& dst) {
  const int s = g.node_index(src), t = g.node_index(dst);
  for (const auto& e : g.edges) {
    if (e.source == s && e.target == t) return e.weight;
  }
  return 0;
}

// graph with integer node ids "n00".."nXX" and explicit edges
InteractionGraph make_graph(int n,
                            const std::vector<std::pair<int, int>>& edges) {
  InteractionGraph g;
  for (int i = 0; i < n; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "n%02d", i);
    g.nodes.push_back({buf, {}, true});
  }
  for (auto [u, v] : edges) g.edges.push_back({u, v, 1});
  return g;
}

}  // namespace

TEST_CASE("mention graph counts one edge per mentioning post") {
  std::vector<RawPost> posts{
      mention_post("a", {"b", "b", "c"}, "p1"),  // b deduped within the post
      mention_post("a", {"b"}, "p2"),
      mention_post("b", {"a"}, "p3"),
      mention_post("c", {"c"}, "p4"),  // self-mention dropped
  };
  auto g = build_mention_graph(posts);
  CHECK(g.nodes.size() == 3);
  CHECK(weight_of(g, "a", "b") == 2);
  CHECK(weight_of(g, "a", "c") == 1);
  CHECK(weight_of(g, "b", "a") == 1);
  CHECK(weight_of(g, "c", "c") == 0);
  int total = 0;
  for (const auto& e : g.edges) total += e.weight;
  CHECK(total == 4);  // p1 contributes 2 (b once, c once), p2 and p3 one each
}

TEST_CASE("retweet graph links retweeter to original author") {
  std::vector<RawPost> posts{
      retweet_post("a", "b", "r1"),
      retweet_post("a", "b", "r2"),
      retweet_post("b", "c", "r3"),
      mention_post("d", {}, "p1"),  // author only, no edges
  };
  auto g = build_retweet_graph(posts);
  CHECK(g.kind == GraphKind::retweet);
  CHECK(g.nodes.size() == 4);
  CHECK(weight_of(g, "a", "b") == 2);
  CHECK(weight_of(g, "b", "c") == 1);
  CHECK(g.edges.size() == 2);
}

TEST_CASE("attach_attitudes marks model users valid, the rest invalid") {
  auto g = build_mention_graph({mention_post("a", {"b"}, "p1")});
  FactorModel m;
  m.users = {"a"};
  m.user_attitudes.resize(1, 2);
  m.user_attitudes << 0.7, 0.2;
  attach_attitudes(g, m);
  const auto& na = g.nodes[g.node_index("a")];
  const auto& nb = g.nodes[g.node_index("b")];
  CHECK(na.attitude_valid);
  CHECK(na.attitude.empathy == 0.7);
  CHECK(!nb.attitude_valid);
  CHECK(nb.attitude.empathy == 0.0);
}

TEST_CASE("largest_scc finds the cycle in a small digraph") {
  // 0->1->2->0 is a 3-cycle; 3 dangles off it; 4 isolated
  auto g = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  auto scc = largest_scc(g);
  std::set<std::string> ids;
  for (const auto& n : scc.nodes) ids.insert(n.user_id);
  CHECK(ids == std::set<std::string>{"n00", "n01", "n02"});
  CHECK(scc.edges.size() == 3);  // the 2->3 edge leaves the component
}

TEST_CASE("largest_scc tie-break picks the lexicographically smaller set") {
  // two disjoint 2-cycles: {n02,n03} and {n00,n01}
  auto g = make_graph(4, {{2, 3}, {3, 2}, {0, 1}, {1, 0}});
  auto scc = largest_scc(g);
  std::set<std::string> ids;
  for (const auto& n : scc.nodes) ids.insert(n.user_id);
  CHECK(ids == std::set<std::string>{"n00", "n01"});
}

TEST_CASE("largest_scc agrees with the reachability oracle on random graphs") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 12;
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    const int m = 5 + static_cast<int>(rng() % 25);
    for (int e = 0; e < m; ++e) {
      int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u == v || !seen.insert({u, v}).second) continue;
      edges.push_back({u, v});
    }
    auto g = make_graph(n, edges);
    auto scc = largest_scc(g);
    std::set<std::string> got;
    for (const auto& node : scc.nodes) got.insert(node.user_id);
    std::set<std::string> expect;
    for (int v : oracles::reachability_scc(n, edges)) {
      expect.insert(g.nodes[v].user_id);
    }
    CHECK(got == expect);
  }
}

TEST_CASE("largest_scc is idempotent") {
  auto g = make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 3}, {2, 3}});
  auto once = largest_scc(g);
  auto twice = largest_scc(once);
  CHECK(once.nodes.size() == twice.nodes.size());
  CHECK(once.edges.size() == twice.edges.size());
}

TEST_CASE("largest_scc rejects an empty graph") {
  InteractionGraph g;
  CHECK_THROWS_AS(largest_scc(g), EmptyGraph);
}

TEST_CASE("assortativity matches the plain Pearson oracle") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 10;
    auto g = make_graph(n, {});
    for (auto& node : g.nodes) node.attitude = {unit(rng), unit(rng)};
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < 25; ++e) {
      int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
      if (u == v || !seen.insert({u, v}).second) continue;
      g.edges.push_back({u, v, 1});
    }
    if (g.edges.size() < 2) continue;
    std::vector<double> xs, ys;
    for (const auto& e : g.edges) {
      xs.push_back(tendency(g.nodes[e.source].attitude));
      ys.push_back(tendency(g.nodes[e.target].attitude));
    }
    auto r = assortativity(g, NodeAttribute::tendency);
    CHECK(r.coefficient ==
          doctest::Approx(oracles::pearson(xs, ys)).epsilon(1e-12));
    CHECK(r.n_edges == static_cast<int>(g.edges.size()));
  }
}

TEST_CASE("perfect homophily gives coefficient 1") {
  // two groups with internal edges only; attribute equal within a group
  auto g = make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  for (int i = 0; i < 3; ++i) g.nodes[i].attitude = {0.9, 0.1};
  for (int i = 3; i < 6; ++i) g.nodes[i].attitude = {0.1, 0.9};
  auto r = assortativity(g, NodeAttribute::tendency);
  CHECK(r.coefficient == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("assortativity skips attitude-invalid endpoints") {
  auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  g.nodes[0].attitude = {0.9, 0.1};
  g.nodes[1].attitude = {0.8, 0.3};
  g.nodes[2].attitude = {0.1, 0.7};
  g.nodes[3].attitude_valid = false;
  auto r = assortativity(g, NodeAttribute::empathy);
  CHECK(r.n_edges == 2);  // 0->1 and 1->2 only
}

TEST_CASE("assortativity is invariant to affine attribute maps") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unit(0, 1);
  auto g = make_graph(8, {});
  for (auto& node : g.nodes) node.attitude = {unit(rng), unit(rng)};
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < 20; ++e) {
    int u = static_cast<int>(rng() % 8), v = static_cast<int>(rng() % 8);
    if (u == v || !seen.insert({u, v}).second) continue;
    g.edges.push_back({u, v, 1});
  }
  auto base = assortativity(g, NodeAttribute::empathy);
  auto mapped = g;
  for (auto& node : mapped.nodes) {
    node.attitude.empathy = 3.0 * node.attitude.empathy + 0.2;
  }
  auto r = assortativity(mapped, NodeAttribute::empathy);
  CHECK(r.coefficient == doctest::Approx(base.coefficient).epsilon(1e-12));
}

TEST_CASE("weighted assortativity equals repeating each edge weight times") {
  auto g = make_graph(4, {});
  g.nodes[0].attitude = {0.9, 0.0};
  g.nodes[1].attitude = {0.7, 0.2};
  g.nodes[2].attitude = {0.1, 0.8};
  g.nodes[3].attitude = {0.3, 0.5};
  g.edges = {{0, 1, 3}, {1, 2, 1}, {2, 3, 2}, {3, 0, 1}};
  AssortativityOptions weighted;
  weighted.weighted = true;
  auto r = assortativity(g, NodeAttribute::tendency, weighted);

  InteractionGraph expanded = g;
  expanded.edges.clear();
  for (const auto& e : g.edges) {
    for (int k = 0; k < e.weight; ++k) {
      expanded.edges.push_back({e.source, e.target, 1});
    }
  }
  auto ex = assortativity(expanded, NodeAttribute::tendency);
  CHECK(r.coefficient == doctest::Approx(ex.coefficient).epsilon(1e-12));
  CHECK(r.n_edges == 7);
}

TEST_CASE("constant attributes raise DegenerateAttribute") {
  auto g = make_graph(3, {{0, 1}, {1, 2}});
  for (auto& node : g.nodes) node.attitude = {0.5, 0.5};
  CHECK_THROWS_AS(assortativity(g, NodeAttribute::empathy),
                  DegenerateAttribute);
  auto single = make_graph(2, {{0, 1}});
  single.nodes[0].attitude = {0.9, 0.1};
  single.nodes[1].attitude = {0.2, 0.8};
  CHECK_THROWS_AS(assortativity(single, NodeAttribute::tendency),
                  DegenerateAttribute);
}
