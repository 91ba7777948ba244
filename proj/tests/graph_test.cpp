#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "gperm/generators.hpp"
#include "gperm/graph.hpp"
#include "gperm/greedy.hpp"
#include "gperm/oracle.hpp"
#include "gperm/rng.hpp"

using namespace gperm;

namespace {

Graph path(std::size_t n) { return gen::path_graph(n); }
Graph k3() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

// Multi-source Bellman-Ford, the independent oracle for dijkstra.
std::vector<Weight> bellman_ford(const Graph& g, const std::vector<Source>& sources) {
  std::vector<Weight> d(g.size(), kInfinity);
  for (const Source& s : sources) d[s.v] = std::min(d[s.v], s.offset);
  for (std::size_t round = 0; round < g.size(); ++round) {
    bool changed = false;
    for (const Edge& e : g.edges()) {
      if (d[e.u] + e.w < d[e.v]) d[e.v] = d[e.u] + e.w, changed = true;
      if (d[e.v] + e.w < d[e.u]) d[e.u] = d[e.v] + e.w, changed = true;
    }
    if (!changed) break;
  }
  return d;
}

}  // namespace

TEST(Parse, TriangleTranscribed) {
  const Graph g = parse_graph("3 3\n0 1 1.0\n1 2 1.0\n0 2 1.0");
  ASSERT_EQ(g.size(), 3u);
  ASSERT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.edge(2).u, 0u);
  EXPECT_EQ(g.edge(2).v, 2u);
  EXPECT_EQ(g.edge(2).w, 1.0);
}

TEST(Parse, SingleEdge) {
  const Graph g = parse_graph("2 1\n0 1 5.0");
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edge(0).w, 5.0);
}

TEST(Parse, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_graph(text, GraphFormat::EdgeList);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("2 1\n0 1 -1"), 2u);
  EXPECT_EQ(line_of("3 2\n0 1 1\n1 7 1"), 3u);
  EXPECT_EQ(line_of("3 2\n0 1 1\n1 1 1"), 3u);
  EXPECT_EQ(line_of("3 2\n0 1 1\n1 2 x"), 3u);
  EXPECT_EQ(line_of("3 2\n# comment\n0 1 1\n\n1 2 1 9"), 5u);
  EXPECT_GT(line_of("3 2\n0 1 1"), 0u);
}

TEST(Parse, DimacsMergesDuplicatesByMin) {
  const Graph g = parse_graph("c tiny\np sp 3 3\na 1 2 4\na 2 1 3\na 2 3 1\n");
  ASSERT_EQ(g.size(), 3u);
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(dijkstra(g, 0)[2], 4.0);
}

TEST(Parse, WriteRoundTrip) {
  const Graph g = gen::random_connected_graph(30, 60, gen::WeightRange{0.5, 90.0, false}, 4);
  std::ostringstream out;
  write_graph(out, g);
  const Graph h = parse_graph(out.str());
  ASSERT_EQ(h.num_edges(), g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) EXPECT_EQ(h.edge(i).w, g.edge(i).w);
}

TEST(Graph, RejectsBadEdges) {
  EXPECT_THROW(Graph(2, {{0, 0, 1}}), GraphError);
  EXPECT_THROW(Graph(2, {{0, 2, 1}}), GraphError);
  EXPECT_THROW(Graph(2, {{0, 1, -1}}), GraphError);
  EXPECT_THROW(Graph(0, {}), GraphError);
}

TEST(Dijkstra, PathFromEnd) {
  const auto f = dijkstra(path(3), 0);
  EXPECT_EQ(f.delta, (std::vector<Weight>{0, 1, 2}));
}

TEST(Dijkstra, TwoSources) {
  const std::vector<Source> s{{0, 0}, {2, 0}};
  EXPECT_EQ(dijkstra(path(3), s).delta, (std::vector<Weight>{0, 1, 0}));
}

TEST(Dijkstra, OffsetShift) {
  const std::vector<Source> s{{1, 0.5}};
  EXPECT_EQ(dijkstra(k3(), s).delta, (std::vector<Weight>{1.5, 0.5, 1.5}));
}

TEST(Dijkstra, RejectsEmptySources) { EXPECT_THROW(dijkstra(k3(), std::span<const Source>{}), GraphError); }

TEST(Dijkstra, MatchesBellmanFordExactly) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 120);
    const Graph g = gen::random_connected_graph(n, n + uniform_below(rng, 3 * n), gen::WeightRange{0.0, 50.0, false}, rng());
    std::vector<Source> sources;
    const std::size_t count = 1 + uniform_below(rng, 3);
    for (std::size_t i = 0; i < count; ++i) sources.push_back({uniform_below(rng, n), 5 * uniform01(rng)});
    EXPECT_EQ(dijkstra(g, sources).delta, bellman_ford(g, sources)) << "trial " << trial;
  }
}

TEST(PrunedRelax, UnprunedFromEmptyField) {
  DistanceField f(4);
  pruned_dijkstra_relax(path(4), 0, f);
  EXPECT_EQ(f.delta, (std::vector<Weight>{0, 1, 2, 3}));
}

TEST(PrunedRelax, SecondSourceOnlyLowersCloserEntries) {
  const Graph g = path(4);
  DistanceField f(4);
  pruned_dijkstra_relax(g, 0, f);
  const std::size_t dk = pruned_dijkstra_relax(g, 3, f);
  EXPECT_EQ(f.delta, (std::vector<Weight>{0, 1, 1, 0}));
  EXPECT_EQ(dk, 2u);  // vertices 3 and 2; vertex 1 is pruned
}

TEST(PrunedRelax, ZeroFieldIsFullyPruned) {
  DistanceField f(4);
  f.delta.assign(4, 0);
  EXPECT_EQ(pruned_dijkstra_relax(path(4), 2, f), 0u);
  EXPECT_EQ(f.delta, (std::vector<Weight>(4, 0)));
}

TEST(PrunedRelax, EqualsPointwiseMinAndNeverIncreases) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 150);
    const Graph g = gen::random_connected_graph(n, 2 * n, gen::WeightRange{1, 20, true}, rng());
    DistanceField f(n);
    for (int step = 0; step < 6; ++step) {
      const Vertex s = uniform_below(rng, n);
      const auto before = f.delta;
      pruned_dijkstra_relax(g, s, f);
      const auto full = dijkstra(g, s);
      for (Vertex v = 0; v < n; ++v) {
        EXPECT_EQ(f.delta[v], std::min(before[v], full[v]));
        EXPECT_LE(f.delta[v], before[v]);
      }
    }
  }
}

// Over a random order driving the net computation with a tiny radius (every
// vertex becomes a center), the decrease-key total per vertex stays within
// 4 ln n on average.
TEST(PrunedRelax, DecreaseKeysPerVertexAreLogarithmic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 2000;
    const Graph g = gen::random_connected_graph(n, 4 * n, gen::WeightRange{1, 100, true}, 100 + seed);
    std::size_t dk = 0;
    r_net(g, 0.5, seed, &dk);
    EXPECT_LE(static_cast<double>(dk) / n, 4 * std::log(static_cast<double>(n))) << "seed " << seed;
  }
}

TEST(Diameter, PathEstimate) {
  const Graph g = path(3);
  EXPECT_EQ(approx_diameter(g), 4.0);
  const auto dm = oracle::apsp_exact(g);
  EXPECT_LE(dm(0, 2), 4.0);
}

TEST(Diameter, SingleEdgeAndTriangle) {
  EXPECT_EQ(approx_diameter(Graph(2, {{0, 1, 5}})), 10.0);
  EXPECT_EQ(approx_diameter(k3()), 2.0);
}

TEST(Diameter, BracketsTrueDiameter) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen::random_connected_graph(60, 120, gen::WeightRange{1, 100, true}, seed);
    const auto all = oracle::sorted_pair_distances(oracle::apsp_exact(g));
    const Weight diam = all.back();
    EXPECT_LE(diam, approx_diameter(g));
    EXPECT_LE(approx_diameter(g), 2 * diam);
  }
}

TEST(Diameter, RejectsDisconnected) { EXPECT_THROW(approx_diameter(Graph(3, {{0, 1, 1}})), GraphError); }

TEST(Spread, Examples) {
  EXPECT_EQ(spread(Graph(2, {{0, 1, 5}})).phi, 2.0);
  EXPECT_EQ(spread(path(4)).phi, 6.0);
  const Graph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 10}});
  EXPECT_EQ(oracle::apsp_exact(g)(0, 2), 2.0);
  EXPECT_EQ(spread(g).phi, 4.0);
}

TEST(Spread, ZeroWeightsIgnoredOrRejected) {
  const auto s = spread(Graph(3, {{0, 1, 0}, {1, 2, 2}}));
  EXPECT_EQ(s.zero_weight_edges, 1u);
  EXPECT_EQ(s.phi, 2.0);
  EXPECT_THROW(spread(Graph(2, {{0, 1, 0}})), GraphError);
}

TEST(Contraction, RepresentativeIsIdempotentMinimum) {
  const Graph g = gen::random_connected_graph(80, 200, gen::WeightRange{1, 50, true}, 9);
  ContractedGraph cg(g);
  for (Weight tau : {0.5, 5.0, 20.0, 60.0}) {
    cg.set_threshold(tau);
    // Classes must equal components of the edges shorter than tau.
    std::vector<Edge> short_edges;
    for (const Edge& e : g.edges())
      if (e.w < tau) short_edges.push_back(e);
    const Graph sub(g.size(), short_edges);
    for (Vertex v = 0; v < g.size(); ++v) {
      const Vertex rep = cg.representative(v);
      EXPECT_EQ(cg.representative(rep), rep);
      const auto f = dijkstra(sub, v);
      Vertex smallest = v;
      for (Vertex u = 0; u < g.size(); ++u)
        if (f[u] != kInfinity) smallest = std::min(smallest, u);
      EXPECT_EQ(rep, smallest);
    }
    for (const Edge& e : short_edges) EXPECT_EQ(cg.class_of(e.u), cg.class_of(e.v));
  }
}
