// Seeded instance generators: random connected graphs, grids, planar
// triangulations, partial k-trees with their decompositions, extreme-spread
// graphs and random point sets.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gperm/euclid.hpp"
#include "gperm/graph.hpp"
#include "gperm/rng.hpp"
#include "gperm/treewidth.hpp"

namespace gperm::gen {

struct WeightRange {
  double lo = 1;
  double hi = 1;
  bool integer = true;

  double draw(Rng& rng) const {
    if (integer) return lo + static_cast<double>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
    return lo + (hi - lo) * uniform01(rng);
  }
};

inline std::vector<Vertex> random_labels(std::size_t n, Rng& rng) {
  std::vector<Vertex> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  fisher_yates(std::span<Vertex>(label), rng);
  return label;
}

// Random spanning tree (each vertex hooks to a uniform earlier one, labels
// shuffled) plus uniformly random extra edges up to m, without repeats.
inline Graph random_connected_graph(std::size_t n, std::size_t m, WeightRange weights, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_connected_graph: n must be positive");
  const std::size_t max_edges = n * (n - 1) / 2;
  m = std::clamp(m, n - 1, max_edges);
  Rng rng(seed);
  const auto label = random_labels(n, rng);
  std::set<std::pair<Vertex, Vertex>> used;
  std::vector<Edge> edges;
  auto add = [&](Vertex a, Vertex b) {
    if (a == b) return false;
    if (!used.insert({std::min(a, b), std::max(a, b)}).second) return false;
    edges.push_back(Edge{a, b, weights.draw(rng)});
    return true;
  };
  for (std::size_t i = 1; i < n; ++i) add(label[i], label[uniform_below(rng, i)]);
  while (edges.size() < m) add(uniform_below(rng, n), uniform_below(rng, n));
  return Graph(n, std::move(edges));
}

inline Graph path_graph(std::size_t n, double w = 1) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back(Edge{i, i + 1, w});
  return Graph(n, std::move(edges));
}

// rows x cols grid, vertex (i, j) = i * cols + j.
inline Graph grid_graph(std::size_t rows, std::size_t cols, WeightRange weights, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const Vertex v = i * cols + j;
      if (j + 1 < cols) edges.push_back(Edge{v, v + 1, weights.draw(rng)});
      if (i + 1 < rows) edges.push_back(Edge{v, v + cols, weights.draw(rng)});
    }
  return Graph(rows * cols, std::move(edges));
}

// Grid with one random diagonal per cell.
inline Graph triangulated_grid(std::size_t rows, std::size_t cols, WeightRange weights, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges = grid_graph(rows, cols, weights, rng()).edges();
  for (std::size_t i = 0; i + 1 < rows; ++i)
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      const Vertex v = i * cols + j;
      if (rng() & 1) edges.push_back(Edge{v, v + cols + 1, weights.draw(rng)});
      else edges.push_back(Edge{v + 1, v + cols, weights.draw(rng)});
    }
  return Graph(rows * cols, std::move(edges));
}

// Stacked (Apollonian) triangulation: every new vertex lands in a random
// face of the current triangulation and connects to its three corners.
inline Graph stacked_triangulation(std::size_t n, WeightRange weights, std::uint64_t seed) {
  if (n < 3) return path_graph(std::max<std::size_t>(n, 1), weights.lo);
  Rng rng(seed);
  std::vector<Edge> edges{{0, 1, weights.draw(rng)}, {1, 2, weights.draw(rng)}, {0, 2, weights.draw(rng)}};
  std::vector<std::array<Vertex, 3>> faces{{0, 1, 2}, {0, 1, 2}};
  for (Vertex v = 3; v < n; ++v) {
    const std::size_t f = uniform_below(rng, faces.size());
    const auto [a, b, c] = faces[f];
    for (Vertex x : {a, b, c}) edges.push_back(Edge{v, x, weights.draw(rng)});
    faces[f] = {a, b, v};
    faces.push_back({b, c, v});
    faces.push_back({a, c, v});
  }
  return Graph(n, std::move(edges));
}

struct DecomposedGraph {
  Graph graph;
  TreeDecomposition td;
};

// Random k-tree on n vertices, then each edge outside a spanning tree is kept
// with probability keep. The construction's bags give a width-k decomposition.
inline DecomposedGraph partial_k_tree(std::size_t n, std::size_t k, double keep, WeightRange weights, std::uint64_t seed) {
  if (n == 0 || k == 0) throw std::invalid_argument("partial_k_tree: need n >= 1 and k >= 1");
  k = std::min(k, n - 1 == 0 ? std::size_t{1} : n - 1);
  Rng rng(seed);
  DecomposedGraph out;
  if (n == 1) {
    out.graph = Graph(1, {});
    out.td.bags = {{0}};
    return out;
  }
  const auto label = random_labels(n, rng);
  std::vector<std::pair<Edge, bool>> candidates;  // (edge, must keep)
  std::vector<Vertex> first_bag;
  for (Vertex v = 0; v <= k; ++v) {
    first_bag.push_back(label[v]);
    for (Vertex u = 0; u < v; ++u) candidates.push_back({Edge{label[u], label[v], 0}, u + 1 == v});
  }
  out.td.bags.push_back(first_bag);
  for (Vertex v = k + 1; v < n; ++v) {
    const std::size_t host = uniform_below(rng, out.td.bags.size());
    std::vector<Vertex> bag = out.td.bags[host];
    bag.erase(bag.begin() + static_cast<std::ptrdiff_t>(uniform_below(rng, bag.size())));
    const std::size_t tie = uniform_below(rng, bag.size());
    for (std::size_t i = 0; i < bag.size(); ++i) candidates.push_back({Edge{bag[i], label[v], 0}, i == tie});
    bag.push_back(label[v]);
    out.td.tree_edges.emplace_back(host, out.td.bags.size());
    out.td.bags.push_back(std::move(bag));
  }
  std::vector<Edge> edges;
  for (auto& [e, must] : candidates)
    if (must || uniform01(rng) < keep) edges.push_back(Edge{e.u, e.v, weights.draw(rng)});
  out.graph = Graph(n, std::move(edges));
  validate_tree_decomposition(out.graph, out.td);
  return out;
}

inline DecomposedGraph random_tree(std::size_t n, WeightRange weights, std::uint64_t seed) {
  return partial_k_tree(n, 1, 1.0, weights, seed);
}

// Random connected graph whose weights are log-uniform in [1, 1e12], with
// both extremes present.
inline Graph extreme_spread_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("extreme_spread_graph: need n >= 3");
  Rng rng(seed ^ 0x5eed);
  Graph base = random_connected_graph(n, m, WeightRange{1, 2, true}, seed);
  std::vector<Edge> edges = base.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double exponent = i == 0 ? 0.0 : (i == 1 ? 12.0 : 12.0 * uniform01(rng));
    edges[i].w = std::round(std::pow(10.0, exponent));
  }
  return Graph(n, std::move(edges));
}

inline PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> coords(n * d);
  for (double& x : coords) x = uniform01(rng);
  return PointSet(n, d, std::move(coords));
}

}  // namespace gperm::gen
