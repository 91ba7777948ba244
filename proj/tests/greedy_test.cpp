#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gperm/generators.hpp"
#include "gperm/graph.hpp"
#include "gperm/greedy.hpp"
#include "gperm/oracle.hpp"

using namespace gperm;

namespace {

Graph k3() { return Graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}); }

Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back(Edge{0, v, 1});
  return Graph(leaves + 1, std::move(edges));
}

std::vector<Graph> corpus(std::size_t count, std::size_t max_n, std::uint64_t seed, bool integer = false) {
  Rng rng(seed);
  std::vector<Graph> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 2 + uniform_below(rng, max_n - 1);
    const std::size_t m = n - 1 + uniform_below(rng, 3 * n);
    out.push_back(gen::random_connected_graph(n, m, gen::WeightRange{1, 100, integer}, rng()));
  }
  return out;
}

}  // namespace

TEST(RNet, PathTrace) {
  const std::vector<Vertex> order{2, 0, 1, 3};
  const Net net = r_net(gen::path_graph(4), 1.5, order, {}, DistanceField(4));
  EXPECT_EQ(net.points, (std::vector<Vertex>{2, 0}));
  EXPECT_EQ(net.cover_field.delta, (std::vector<Weight>{0, 1, 0, 1}));
  EXPECT_TRUE(oracle::verify_net(oracle::apsp_exact(gen::path_graph(4)), net.points, 1.5).pass);
}

TEST(RNet, TinyRadiusTakesEveryVertexInOrder) {
  const Graph g = gen::random_connected_graph(30, 50, gen::WeightRange{1, 10, true}, 2);
  std::vector<Vertex> order(30);
  for (Vertex v = 0; v < 30; ++v) order[v] = (v * 7) % 30;
  EXPECT_EQ(r_net(g, 0.5, order, {}, DistanceField(30)).points, order);
}

TEST(RNet, HugeRadiusTakesFirstVertex) {
  const std::vector<Vertex> order{1, 2, 0};
  EXPECT_EQ(r_net(k3(), 3, order, {}, DistanceField(3)).points, (std::vector<Vertex>{1}));
}

TEST(RNet, UsedVerticesAreNeverSelected) {
  const std::vector<Vertex> order{0, 1, 2, 3};
  const std::vector<char> used{1, 0, 0, 0};
  const Net net = r_net(gen::path_graph(4), 1.5, order, used, DistanceField(4));
  EXPECT_EQ(net.points, (std::vector<Vertex>{1, 3}));
}

TEST(RNet, Errors) {
  EXPECT_THROW(r_net(k3(), 0, 1), std::invalid_argument);
  EXPECT_THROW(r_net(Graph(3, {{0, 1, 1}}), 1, 1), GraphError);
}

TEST(RNet, PackingAndCoveringOnRandomGraphs) {
  for (const Graph& g : corpus(25, 200, 7)) {
    const auto dm = oracle::apsp_exact(g);
    for (double r : {5.0, 40.0, 150.0}) {
      const Net net = r_net(g, r, 3);
      const auto v = oracle::verify_net(dm, net.points, r);
      EXPECT_TRUE(v.pass) << v.witness;
      for (Vertex x = 0; x < g.size(); ++x) {
        Weight best = kInfinity;
        for (Vertex p : net.points) best = std::min(best, dm(x, p));
        EXPECT_DOUBLE_EQ(net.cover_field.delta[x], best);
      }
    }
  }
}

TEST(ExactGreedy, PathSmallestIdTies) {
  const auto p = exact_greedy(gen::path_graph(4), 0);
  EXPECT_EQ(p.order, (std::vector<Vertex>{0, 3, 1, 2}));
  EXPECT_EQ(p.radii, (std::vector<Weight>{kInfinity, 3, 1, 1}));
}

TEST(ExactGreedy, TriangleAndEdge) {
  EXPECT_EQ(exact_greedy(k3(), 0).order, (std::vector<Vertex>{0, 1, 2}));
  const auto e = exact_greedy(Graph(2, {{0, 1, 7}}), 1);
  EXPECT_EQ(e.order, (std::vector<Vertex>{1, 0}));
  EXPECT_EQ(e.radii[1], 7.0);
}

// Integer weights keep every path sum exact, so the comparison is verbatim.
TEST(ExactGreedy, MatchesBruteForce) {
  Rng rng(3);
  for (const Graph& g : corpus(40, 120, 13, true)) {
    const Vertex first = uniform_below(rng, g.size());
    const auto mine = exact_greedy(g, first);
    const auto ref = oracle::brute_greedy(oracle::apsp_exact(g), first);
    EXPECT_EQ(mine.order, ref.order);
    EXPECT_EQ(mine.radii, ref.radii);
  }
}

TEST(ExactGreedy, ScalingLeavesOrderAndScalesRadii) {
  const Graph g = gen::random_connected_graph(50, 120, gen::WeightRange{1, 30, true}, 8);
  std::vector<Edge> scaled = g.edges();
  for (Edge& e : scaled) e.w *= 4;
  const auto a = exact_greedy(g, 5);
  const auto b = exact_greedy(Graph(g.size(), scaled), 5);
  EXPECT_EQ(a.order, b.order);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_EQ(b.radii[i], 4 * a.radii[i]);
}

TEST(ApproxGreedy, BothVariantsPassVerifier) {
  const auto graphs = corpus(20, 150, 21);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto dm = oracle::apsp_exact(graphs[i]);
    for (double eps : {0.1, 0.5, 1.0}) {
      const auto a = approx_greedy_bounded_spread(graphs[i], eps, i);
      const auto va = oracle::verify_eps_greedy(dm, a, eps);
      EXPECT_TRUE(va.pass) << "bounded, graph " << i << " eps " << eps << ": " << va.witness;
      const auto b = approx_greedy(graphs[i], eps, i);
      const auto vb = oracle::verify_eps_greedy(dm, b, eps);
      EXPECT_TRUE(vb.pass) << "spread-free, graph " << i << " eps " << eps << ": " << vb.witness;
    }
  }
}

TEST(ApproxGreedy, ClaimedRadiiAreValid) {
  // radii[i] never exceeds the insertion distance, and the prefix
  // eccentricity is within (1+eps) radii[i].
  const Graph g = gen::random_connected_graph(80, 200, gen::WeightRange{1, 50, true}, 4);
  const auto dm = oracle::apsp_exact(g);
  for (const auto& perm : {approx_greedy_bounded_spread(g, 0.5, 1), approx_greedy(g, 0.5, 1)}) {
    std::vector<Weight> to_prefix(g.size(), kInfinity);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (i > 0) {
        const Weight ecc = *std::max_element(to_prefix.begin(), to_prefix.end());
        EXPECT_LE(perm.radii[i], to_prefix[perm.order[i]] * (1 + 1e-12));
        EXPECT_LE(ecc, (1 + perm.eps) * perm.radii[i] * (1 + 1e-12));
      }
      for (Vertex v = 0; v < g.size(); ++v) to_prefix[v] = std::min(to_prefix[v], dm(perm.order[i], v));
    }
  }
}

// The top level runs at (1+eps) times the diameter bound; a first block with
// more than one vertex would have to claim that radius for its second vertex.
TEST(ApproxGreedy, StarFirstBlockIsSingle) {
  const Graph g = star(12);
  for (double eps : {0.1, 1.0}) {
    const auto p = approx_greedy_bounded_spread(g, eps, 2);
    EXPECT_EQ(p.size(), 13u);
    EXPECT_LE(p.radii[1], approx_diameter(g));
    const auto q = approx_greedy(g, eps, 2);
    EXPECT_LE(q.radii[1], approx_diameter(g));
  }
}

TEST(ApproxGreedy, PathFirstVertexAlone) {
  const Graph g = gen::path_graph(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = approx_greedy_bounded_spread(g, 0.1, seed);
    EXPECT_LE(p.radii[1], approx_diameter(g));
  }
}

TEST(ApproxGreedy, ExtremeSpreadPath) {
  const Graph g(4, {{0, 1, 1}, {1, 2, 1e6}, {2, 3, 1e12}});
  const auto dm = oracle::apsp_exact(g);
  for (double eps : {0.1, 0.5, 1.0}) {
    GreedyStats stats;
    const auto p = approx_greedy(g, eps, 5, &stats);
    EXPECT_TRUE(oracle::verify_eps_greedy(dm, p, eps).pass);
    const double n = 4;
    const double bound = 8 / eps * std::log(n / eps);
    for (std::size_t c : stats.edge_active_levels) EXPECT_LE(static_cast<double>(c), bound);
    EXPECT_GT(stats.levels_skipped, 0u);
  }
}

TEST(ApproxGreedy, UnitWeightsNeverSkip) {
  const Graph g = gen::grid_graph(8, 9, gen::WeightRange{1, 1, true}, 0);
  GreedyStats stats;
  const auto p = approx_greedy(g, 0.5, 3, &stats);
  EXPECT_EQ(stats.levels_skipped, 0u);
  EXPECT_TRUE(oracle::verify_eps_greedy(oracle::apsp_exact(g), p, 0.5).pass);
}

TEST(ApproxGreedy, ZeroWeightEdges) {
  const Graph g(5, {{0, 1, 0}, {1, 2, 3}, {2, 3, 0}, {3, 4, 7}});
  const auto dm = oracle::apsp_exact(g);
  EXPECT_TRUE(oracle::verify_eps_greedy(dm, approx_greedy(g, 0.5, 1), 0.5).pass);
  EXPECT_TRUE(oracle::verify_eps_greedy(dm, approx_greedy_bounded_spread(g, 0.5, 1), 0.5).pass);
}

TEST(ApproxGreedy, SingleVertexAndErrors) {
  EXPECT_EQ(approx_greedy(Graph(1, {}), 0.5, 1).order, (std::vector<Vertex>{0}));
  EXPECT_THROW(approx_greedy(k3(), 0, 1), std::invalid_argument);
  EXPECT_THROW(approx_greedy_bounded_spread(k3(), -1, 1), std::invalid_argument);
  EXPECT_THROW(approx_greedy(Graph(3, {{0, 1, 1}}), 0.5, 1), GraphError);
}

TEST(ApproxGreedy, SameSeedSameOutput) {
  const Graph g = gen::random_connected_graph(100, 300, gen::WeightRange{1, 100, false}, 2);
  EXPECT_EQ(approx_greedy(g, 0.3, 9).order, approx_greedy(g, 0.3, 9).order);
  EXPECT_EQ(approx_greedy_bounded_spread(g, 0.3, 9).order, approx_greedy_bounded_spread(g, 0.3, 9).order);
}

TEST(KCenter, PathOfFive) {
  const auto res = k_center_integer(gen::path_graph(5), 2, 7);
  EXPECT_LE(res.centers.size(), 2u);
  EXPECT_LE(res.radius, 2.0);
  EXPECT_EQ(res.radius, oracle::covering_radius(oracle::apsp_exact(gen::path_graph(5)), res.centers));
}

TEST(KCenter, AllVerticesAndStar) {
  const auto all = k_center_integer(k3(), 3, 1);
  EXPECT_EQ(all.radius, 0.0);
  EXPECT_EQ(all.centers.size(), 3u);
  EXPECT_LE(k_center_integer(star(9), 1, 1).radius, 2.0);
}

TEST(KCenter, Errors) {
  EXPECT_THROW(k_center_integer(Graph(2, {{0, 1, 1.5}}), 1, 1), std::invalid_argument);
  EXPECT_THROW(k_center_integer(k3(), 0, 1), std::invalid_argument);
  EXPECT_THROW(k_center_integer(k3(), 4, 1), std::invalid_argument);
}

TEST(KCenter, TwoApproxAgainstExhaustiveOptimum) {
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + uniform_below(rng, 13);
    const Graph g = gen::random_connected_graph(n, n + uniform_below(rng, 2 * n), gen::WeightRange{1, 12, true}, rng());
    const auto dm = oracle::apsp_exact(g);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto res = k_center_integer(g, k, rng());
      const Weight opt = oracle::kcenter_opt(dm, k);
      EXPECT_LE(res.centers.size(), k);
      EXPECT_EQ(res.radius, oracle::covering_radius(dm, res.centers));
      EXPECT_LE(res.radius, 2 * opt) << "n " << n << " k " << k;
    }
  }
}

TEST(PrefixKCenter, Examples) {
  EXPECT_EQ(prefix_k_center(exact_greedy(k3(), 0), 1).radius_bound, 1.0);
  const auto p = prefix_k_center(exact_greedy(gen::path_graph(5), 0), 2);
  EXPECT_EQ(p.radius_bound, 2.0);
  EXPECT_EQ(p.centers, (std::vector<Vertex>{0, 4}));
  const auto perm = exact_greedy(gen::path_graph(5), 0);
  EXPECT_EQ(prefix_k_center(perm, 5).radius_bound, 0.0);
}

TEST(PrefixKCenter, BoundHoldsForApproxPermutations) {
  Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3 + uniform_below(rng, 12);
    const Graph g = gen::random_connected_graph(n, 2 * n, gen::WeightRange{1, 20, true}, rng());
    const auto dm = oracle::apsp_exact(g);
    const auto perm = approx_greedy(g, 0.5, rng());
    for (std::size_t k = 1; k <= n; ++k) {
      const auto pc = prefix_k_center(perm, k);
      EXPECT_LE(oracle::covering_radius(dm, pc.centers), pc.radius_bound * (1 + 1e-12));
      EXPECT_LE(pc.radius_bound, 2 * 1.5 * oracle::kcenter_opt(dm, k) * (1 + 1e-12));
    }
  }
}
