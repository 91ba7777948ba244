// Result types shared by the graph and Euclidean algorithms.
#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "gperm/graph.hpp"

namespace gperm {

// A (1+eps)-greedy permutation. radii[i] is a lower bound on the distance of
// order[i] from order[0..i-1], and the farthest point from order[0..i-1] lies
// within (1 + eps) * radii[i]. radii[0] is +inf. Exact greedy permutations
// carry eps = 0 and radii equal to the insertion distances.
struct GreedyPermutation {
  std::vector<Vertex> order;
  std::vector<Weight> radii;
  double eps = 0;

  std::size_t size() const { return order.size(); }
};

// A net over a graph or point set. points are in selection order;
// selection_delta[i] is the distance of points[i] from the points selected
// before it (a lower bound for the Euclidean variant, +inf for the first).
// Graph nets also carry the distance of every vertex to the net.
struct Net {
  std::vector<Vertex> points;
  std::vector<Weight> selection_delta;
  Weight r = 0;
  DistanceField cover_field;
};

// Counters exposed by the level-based algorithms; tests use them to check
// the work bounds empirically.
struct GreedyStats {
  std::size_t levels_processed = 0;
  std::size_t levels_skipped = 0;
  std::size_t decrease_keys = 0;
  // Index of every processed level, in processing order.
  std::vector<std::size_t> processed_levels;
  // Graph variant: number of processed levels during which each edge was active.
  std::vector<std::size_t> edge_active_levels;
};

inline void write_permutation(std::ostream& out, const GreedyPermutation& perm) {
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < perm.order.size(); ++i) out << i << ' ' << perm.order[i] << ' ' << perm.radii[i] << '\n';
  out.precision(old);
}

inline void write_net(std::ostream& out, const Net& net) {
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < net.points.size(); ++i) out << net.points[i] << ' ' << net.selection_delta[i] << '\n';
  out.precision(old);
}

}  // namespace gperm
