#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "netgen/graph.hpp"
#include "netgen/verify.hpp"

using namespace netgen;

namespace {

Graph from_mask(int n, unsigned mask) {
  Graph g(n);
  int bit = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++bit)
      if (mask & (1u << bit)) g.add_edge(i, j);
  return g;
}

// Slow isomorphism-invariant key: smallest adjacency string over all n!
// relabelings.
std::string brute_key(const Graph& g) {
  std::vector<int> perm(g.n());
  std::iota(perm.begin(), perm.end(), 1);
  std::string best;
  do {
    std::string s;
    for (int i = 0; i < g.n(); ++i)
      for (int j = i + 1; j < g.n(); ++j) s += g.has_edge(perm[i], perm[j]) ? '1' : '0';
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Graph random_graph(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST(Graph, RejectsInvalidEdges) {
  Graph g(3);
  g.add_edge(2, 1);
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_THROW(g.add_edge(1, 2), Error);
  EXPECT_THROW(g.add_edge(3, 3), Error);
  EXPECT_THROW(g.add_edge(1, 4), Error);
  EXPECT_THROW(Graph(1), Error);
}

TEST(PropertyReport, Triangle) {
  Graph g(3);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  const auto r = compute_report(g);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r.degrees[i], 2);
    EXPECT_DOUBLE_EQ(*r.local_cc[i], 1.0);
  }
  EXPECT_DOUBLE_EQ(*r.global_cc, 1.0);
  EXPECT_EQ(*r.diameter, 1);
  EXPECT_DOUBLE_EQ(*r.adn[2], 2.0);
}

TEST(PropertyReport, PathOnThreeNodes) {
  Graph g(3);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  const auto r = compute_report(g);
  EXPECT_DOUBLE_EQ(r.cpl->lo, 1.0);
  EXPECT_DOUBLE_EQ(r.cpl->hi, 1.0);
  EXPECT_DOUBLE_EQ(*r.apl, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(*r.closeness[1], 1.0);
  EXPECT_DOUBLE_EQ(*r.closeness[0], 2.0 / 3.0);
  EXPECT_FALSE(r.local_cc[0].has_value());
}

TEST(PropertyReport, EvenPairCountGivesMedianInterval) {
  // P4 distances {1,1,1,2,2,3}: median anywhere in [1,2].
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  const auto r = compute_report(g);
  EXPECT_DOUBLE_EQ(r.cpl->lo, 1.0);
  EXPECT_DOUBLE_EQ(r.cpl->hi, 2.0);
}

TEST(PropertyReport, DisconnectedScalarsUndefined) {
  Graph g(4);
  g.add_edge(1, 2);
  const auto r = compute_report(g);
  EXPECT_FALSE(r.connected);
  EXPECT_FALSE(r.diameter.has_value());
  EXPECT_FALSE(r.apl.has_value());
  EXPECT_FALSE(r.closeness[0].has_value());
  EXPECT_EQ(r.dist[2][3], kUnreachable);
}

TEST(PropertyReport, RandomGraphInvariants) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 8;
    const Graph g = random_graph(n, 0.4, rng);
    const auto r = compute_report(g);
    long deg_sum = std::accumulate(r.degrees.begin(), r.degrees.end(), 0L);
    EXPECT_EQ(deg_sum, 2L * static_cast<long>(g.num_edges()));
    long tri = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) tri += g.has_edge(i, j) && g.has_edge(i, k) && g.has_edge(j, k);
    EXPECT_EQ(std::accumulate(r.triangles.begin(), r.triangles.end(), 0L), 3 * tri);
    EXPECT_EQ(r.total_triangles(), tri);
    double paths = 0;
    for (int d : r.degrees) paths += d * (d - 1) / 2.0;
    if (paths > 0) {
      EXPECT_NEAR(*r.global_cc, 3.0 * tri / paths, 1e-12);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        EXPECT_EQ(r.dist[i][j], r.dist[j][i]);
        if (i != j) {
          EXPECT_EQ(r.dist[i][j] == 1, g.has_edge(i + 1, j + 1));
        }
        for (int k = 0; k < n; ++k) {
          if (r.dist[i][k] == kUnreachable || r.dist[k][j] == kUnreachable) continue;
          EXPECT_LE(r.dist[i][j], r.dist[i][k] + r.dist[k][j]);
        }
      }
  }
}

TEST(EdgeList, RoundTripAndDot) {
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  const auto text = to_edge_list(g);
  EXPECT_EQ(parse_edge_list(text), g);
  const auto dot = to_dot(g);
  EXPECT_NE(dot.find("label=\"1\""), std::string::npos);
  EXPECT_EQ(parse_dot(dot), g);
  EXPECT_EQ(parse_graph(dot), g);
  EXPECT_EQ(parse_graph(text), g);
  EXPECT_THROW(parse_dot("digraph G { 1 -> 2; }"), Error);
  EXPECT_THROW(parse_dot("graph G { a -- b; }"), Error);
  EXPECT_THROW(parse_edge_list("3\n1 1\n"), Error);
  EXPECT_THROW(parse_edge_list(""), Error);
}

TEST(CanonicalKey, RelabelingsAgree) {
  Graph a(3), b(3), k3(3);
  a.add_edge(1, 2);
  a.add_edge(2, 3);
  b.add_edge(2, 1);
  b.add_edge(1, 3);
  k3.add_edge(1, 2);
  k3.add_edge(1, 3);
  k3.add_edge(2, 3);
  EXPECT_EQ(canonical_key(a), canonical_key(b));
  EXPECT_NE(canonical_key(a), canonical_key(k3));
}

TEST(CanonicalKey, ClassCountsMatchBruteForce) {
  const std::map<int, std::size_t> known{{3, 4}, {4, 11}, {5, 34}};
  for (auto [n, expected] : known) {
    std::set<std::string> fast, slow;
    std::map<std::string, std::string> fast_to_slow;
    const unsigned total = 1u << (n * (n - 1) / 2);
    for (unsigned mask = 0; mask < total; ++mask) {
      const Graph g = from_mask(n, mask);
      const auto f = canonical_key(g), s = brute_key(g);
      fast.insert(f);
      slow.insert(s);
      auto [it, fresh] = fast_to_slow.emplace(f, s);
      if (!fresh) {
        EXPECT_EQ(it->second, s) << "key collision for n=" << n;
      }
    }
    EXPECT_EQ(fast.size(), expected);
    EXPECT_EQ(slow.size(), expected);
  }
}

TEST(CanonicalKey, PermutationInvariant) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + trial % 9;
    const Graph g = random_graph(n, 0.5, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(canonical_key(g), canonical_key(g.relabeled(perm)));
  }
  EXPECT_THROW(canonical_key(Graph(13)), Error);
}

TEST(CanonicalKey, DistinguishesRegularGraphs) {
  // Two cospectral-style 3-regular graphs on 6 nodes: K3,3 and the prism.
  Graph k33(6), prism(6);
  for (int i = 1; i <= 3; ++i)
    for (int j = 4; j <= 6; ++j) k33.add_edge(i, j);
  for (auto [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}, {1, 4}, {2, 5}, {3, 6}})
    prism.add_edge(i, j);
  EXPECT_NE(canonical_key(k33), canonical_key(prism));
}

TEST(CheckSpec, BasicVerdicts) {
  Graph k3(3);
  k3.add_edge(1, 2);
  k3.add_edge(1, 3);
  k3.add_edge(2, 3);
  NetworkSpec s;
  s.n = 3;
  s.constraints.push_back(DegreeSequence{{2, 2, 2}});
  EXPECT_TRUE(check_spec(k3, s).pass);

  Graph p3(3);
  p3.add_edge(1, 2);
  p3.add_edge(2, 3);
  NetworkSpec d;
  d.n = 3;
  d.constraints.push_back(ScalarBand{ScalarProperty::diameter, {1, 1}});
  EXPECT_FALSE(check_spec(p3, d).pass);

  Graph split(4);
  split.add_edge(1, 2);
  NetworkSpec c;
  c.n = 4;
  c.constraints.push_back(ScalarBand{ScalarProperty::cpl, {1, 3}});
  const auto rep = check_spec(split, c);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.items[0].detail, "undefined");
}

TEST(SpecSlack, DegreeDeviationIsAbsoluteDifference) {
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  NetworkSpec s;
  s.n = 4;
  s.constraints.push_back(DegreeSequence{{3, 3, 1, 1}});
  // degrees {2,2,3,1}
  EXPECT_DOUBLE_EQ(*spec_slack(g, s), 1 + 1 + 2 + 0);
}
