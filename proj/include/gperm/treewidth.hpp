// Exact greedy permutations for graphs of bounded treewidth: tree
// decompositions, restricted order-k partitions, L-infinity nearest neighbor
// indexes over boundary-distance vectors, and the round-based main loop.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <iterator>
#include <ostream>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gperm/graph.hpp"
#include "gperm/types.hpp"

namespace gperm {

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
  std::size_t width = 0;

  std::size_t size() const { return bags.size(); }
};

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks both decomposition properties against g; sorts bags and sets width.
inline void validate_tree_decomposition(const Graph& g, TreeDecomposition& td) {
  const std::size_t b = td.bags.size();
  if (b == 0) throw DecompositionError("decomposition has no bags");
  if (td.tree_edges.size() != b - 1) throw DecompositionError("decomposition needs exactly b-1 tree edges");
  std::size_t width = 0;
  for (auto& bag : td.bags) {
    if (bag.empty()) throw DecompositionError("empty bag");
    std::sort(bag.begin(), bag.end());
    if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) throw DecompositionError("repeated vertex in bag");
    if (bag.back() >= g.size()) throw DecompositionError("bag vertex out of range");
    width = std::max(width, bag.size() - 1);
  }
  td.width = width;

  std::vector<std::vector<std::size_t>> tadj(b);
  for (auto [i, j] : td.tree_edges) {
    if (i >= b || j >= b || i == j) throw DecompositionError("bad tree edge");
    tadj[i].push_back(j);
    tadj[j].push_back(i);
  }
  std::vector<char> seen(b, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y : tadj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  if (reached != b) throw DecompositionError("decomposition tree is disconnected");

  std::vector<std::vector<std::size_t>> holders(g.size());
  for (std::size_t i = 0; i < b; ++i)
    for (Vertex v : td.bags[i]) holders[v].push_back(i);
  for (Vertex v = 0; v < g.size(); ++v)
    if (holders[v].empty()) throw DecompositionError("vertex " + std::to_string(v) + " is in no bag");

  // A vertex's bags form a subtree iff they span exactly |bags|-1 tree edges
  // (the tree is acyclic, so any sub-forest with that many edges is connected).
  std::vector<std::size_t> inner_edges(g.size(), 0);
  for (auto [i, j] : td.tree_edges) {
    const auto& x = td.bags[i];
    const auto& y = td.bags[j];
    std::size_t p = 0, q = 0;
    while (p < x.size() && q < y.size()) {
      if (x[p] < y[q]) ++p;
      else if (y[q] < x[p]) ++q;
      else {
        ++inner_edges[x[p]];
        ++p;
        ++q;
      }
    }
  }
  for (Vertex v = 0; v < g.size(); ++v)
    if (inner_edges[v] + 1 != holders[v].size())
      throw DecompositionError("bags of vertex " + std::to_string(v) + " do not form a connected subtree");

  for (const Edge& e : g.edges()) {
    const bool covered = std::any_of(holders[e.u].begin(), holders[e.u].end(),
                                     [&](std::size_t i) { return std::binary_search(td.bags[i].begin(), td.bags[i].end(), e.v); });
    if (!covered) throw DecompositionError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not covered");
  }
}

// File format: "b w", then b bag lines, then b-1 lines "i j". The declared
// width must not be below the actual one.
inline TreeDecomposition parse_tree_decomposition(std::istream& in, const Graph& g) {
  std::string line;
  std::size_t lineno = 0;
  if (!detail::next_content_line(in, line, lineno)) throw ParseError(lineno, "missing header 'b w'");
  std::istringstream header(line);
  const auto b = detail::read_field<long long>(header, lineno, "bag count");
  const auto w = detail::read_field<long long>(header, lineno, "width");
  detail::expect_end(header, lineno);
  if (b < 1 || w < 0) throw ParseError(lineno, "need b >= 1 and w >= 0");
  TreeDecomposition td;
  for (long long i = 0; i < b; ++i) {
    if (!detail::next_content_line(in, line, lineno)) throw ParseError(lineno, "expected " + std::to_string(b) + " bags");
    std::istringstream ss(line);
    std::vector<Vertex> bag;
    long long v = 0;
    while (ss >> v) {
      if (v < 0) throw ParseError(lineno, "negative vertex id");
      bag.push_back(static_cast<Vertex>(v));
    }
    if (!ss.eof()) throw ParseError(lineno, "malformed bag");
    td.bags.push_back(std::move(bag));
  }
  for (long long i = 0; i + 1 < b; ++i) {
    if (!detail::next_content_line(in, line, lineno)) throw ParseError(lineno, "expected " + std::to_string(b - 1) + " tree edges");
    std::istringstream ss(line);
    const auto x = detail::read_field<long long>(ss, lineno, "tree edge endpoint");
    const auto y = detail::read_field<long long>(ss, lineno, "tree edge endpoint");
    detail::expect_end(ss, lineno);
    if (x < 0 || y < 0 || x >= b || y >= b) throw ParseError(lineno, "tree edge endpoint out of range");
    td.tree_edges.emplace_back(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  }
  if (detail::next_content_line(in, line, lineno)) throw ParseError(lineno, "unexpected content after tree edges");
  validate_tree_decomposition(g, td);
  if (td.width > static_cast<std::size_t>(w))
    throw DecompositionError("declared width " + std::to_string(w) + " is below actual width " + std::to_string(td.width));
  return td;
}

inline TreeDecomposition parse_tree_decomposition(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  return parse_tree_decomposition(in, g);
}

inline void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td) {
  out << td.bags.size() << ' ' << td.width << '\n';
  for (const auto& bag : td.bags) {
    for (std::size_t i = 0; i < bag.size(); ++i) out << (i ? " " : "") << bag[i];
    out << '\n';
  }
  for (auto [i, j] : td.tree_edges) out << i << ' ' << j << '\n';
}

struct Subgraph {
  std::vector<std::size_t> edges;  // indices into g.edges()
  std::vector<Vertex> boundary;    // sorted
  std::vector<Vertex> interior;    // sorted
};

struct RestrictedPartition {
  std::size_t k = 0;
  std::vector<Subgraph> parts;
};

inline std::size_t min_partition_order(std::size_t width) { return std::max<std::size_t>(1, (width + 1) * width / 2); }

// Groups the nodes of the binarized decomposition into connected clusters of
// at most k associated edges, multi-node clusters touching at most two
// cluster-crossing tree edges, merged until no adjacent pair can combine.
inline RestrictedPartition restricted_partition(const Graph& g, TreeDecomposition td, std::size_t k) {
  validate_tree_decomposition(g, td);
  if (k < min_partition_order(td.width))
    throw std::invalid_argument("restricted_partition: k = " + std::to_string(k) + " is too small for width " + std::to_string(td.width));

  // Root at bag 0 and binarize: a node with children c1..cm keeps c1 and hangs
  // the rest below a chain of copies of itself.
  const std::size_t b = td.bags.size();
  std::vector<std::vector<std::size_t>> tadj(b);
  for (auto [i, j] : td.tree_edges) {
    tadj[i].push_back(j);
    tadj[j].push_back(i);
  }
  std::vector<std::size_t> bag_of;  // node -> original bag
  std::vector<std::size_t> parent;  // node -> parent node
  std::vector<std::size_t> depth;
  std::vector<std::size_t> node_of_bag(b, kNoVertex);
  std::vector<std::size_t> order;  // pre-order of nodes
  {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, kNoVertex}};
    while (!stack.empty()) {
      const auto [x, attach] = stack.back();
      stack.pop_back();
      const std::size_t node = bag_of.size();
      bag_of.push_back(x);
      parent.push_back(attach);
      depth.push_back(attach == kNoVertex ? 0 : depth[attach] + 1);
      node_of_bag[x] = node;
      order.push_back(node);
      std::vector<std::size_t> children;
      for (std::size_t y : tadj[x])
        if (node_of_bag[y] == kNoVertex) children.push_back(y);
      std::size_t host = node;
      for (std::size_t c = 0; c < children.size(); ++c) {
        if (c >= 1 && c + 1 < children.size()) {
          const std::size_t copy = bag_of.size();
          bag_of.push_back(x);
          parent.push_back(host);
          depth.push_back(depth[host] + 1);
          order.push_back(copy);
          host = copy;
        }
        stack.emplace_back(children[c], host);
      }
    }
  }
  const std::size_t nodes = bag_of.size();

  // Associate each graph edge with the deepest node whose bag holds both ends.
  std::vector<std::vector<std::size_t>> holders(g.size());
  for (std::size_t node = 0; node < nodes; ++node)
    for (Vertex v : td.bags[bag_of[node]]) holders[v].push_back(node);
  std::vector<std::vector<std::size_t>> assoc(nodes);
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    std::size_t best = kNoVertex;
    for (std::size_t node : holders[e.u]) {
      const auto& bag = td.bags[bag_of[node]];
      if (!std::binary_search(bag.begin(), bag.end(), e.v)) continue;
      if (best == kNoVertex || depth[node] > depth[best] || (depth[node] == depth[best] && node < best)) best = node;
    }
    if (best == kNoVertex) throw DecompositionError("restricted_partition: edge is not covered by any bag");
    assoc[best].push_back(i);
  }

  std::vector<std::size_t> uf(nodes), size(nodes), cut(nodes), members(nodes, 1);
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  std::vector<std::size_t> degree(nodes, 0);
  for (std::size_t node = 0; node < nodes; ++node)
    if (parent[node] != kNoVertex) {
      ++degree[node];
      ++degree[parent[node]];
    }
  for (std::size_t node = 0; node < nodes; ++node) {
    size[node] = assoc[node].size();
    cut[node] = degree[node];
  }
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  // Post-order sweeps over tree edges until nothing merges.
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t node = *it;
      if (parent[node] == kNoVertex) continue;
      const std::size_t a = find(node), p = find(parent[node]);
      if (a == p) continue;
      if (size[a] + size[p] > k || cut[a] + cut[p] - 2 > 2) continue;
      uf[a] = p;
      size[p] += size[a];
      cut[p] = cut[a] + cut[p] - 2;
      members[p] += members[a];
      changed = true;
    }
  }

  RestrictedPartition out;
  out.k = k;
  std::vector<std::size_t> part_of(nodes, kNoVertex);
  for (std::size_t node : order) {
    if (assoc[node].empty()) continue;
    const std::size_t root = find(node);
    if (part_of[root] == kNoVertex) {
      part_of[root] = out.parts.size();
      out.parts.emplace_back();
    }
    auto& edges = out.parts[part_of[root]].edges;
    edges.insert(edges.end(), assoc[node].begin(), assoc[node].end());
  }
  std::vector<std::size_t> owner_count(g.size(), 0), last_owner(g.size(), kNoVertex);
  for (std::size_t p = 0; p < out.parts.size(); ++p) {
    std::sort(out.parts[p].edges.begin(), out.parts[p].edges.end());
    for (std::size_t i : out.parts[p].edges)
      for (Vertex v : {g.edge(i).u, g.edge(i).v})
        if (last_owner[v] != p) {
          last_owner[v] = p;
          ++owner_count[v];
        }
  }
  for (auto& part : out.parts) {
    std::vector<Vertex> touched;
    for (std::size_t i : part.edges) {
      touched.push_back(g.edge(i).u);
      touched.push_back(g.edge(i).v);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (Vertex v : touched) (owner_count[v] > 1 ? part.boundary : part.interior).push_back(v);
  }
  return out;
}

// Exact L-infinity nearest neighbor by linear scan; ties go to the smaller id.
class LinfScanIndex {
 public:
  LinfScanIndex() = default;
  LinfScanIndex(std::size_t dim, std::vector<double> coords, std::vector<std::size_t> ids)
      : dim_(dim), coords_(std::move(coords)), ids_(std::move(ids)) {
    if (coords_.size() != dim_ * ids_.size()) throw std::invalid_argument("LinfScanIndex: coordinate count mismatch");
  }

  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }

  std::optional<std::pair<std::size_t, double>> query(std::span<const double> q) const {
    if (ids_.empty()) return std::nullopt;
    std::size_t best = kNoVertex;
    double best_d = kInfinity;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      double d = 0;
      for (std::size_t j = 0; j < dim_; ++j) d = std::max(d, std::abs(coords_[i * dim_ + j] - q[j]));
      if (d < best_d || (d == best_d && ids_[i] < best)) {
        best_d = d;
        best = ids_[i];
      }
    }
    return std::make_pair(best, best_d);
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<std::size_t> ids_;
};

// Exact L-infinity nearest neighbor with a kd-tree and branch-and-bound;
// answers agree with LinfScanIndex including the tie rule.
class LinfKdIndex {
 public:
  LinfKdIndex() = default;
  LinfKdIndex(std::size_t dim, std::vector<double> coords, std::vector<std::size_t> ids)
      : dim_(dim), coords_(std::move(coords)), ids_(std::move(ids)) {
    if (coords_.size() != dim_ * ids_.size()) throw std::invalid_argument("LinfKdIndex: coordinate count mismatch");
    perm_.resize(ids_.size());
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    if (!ids_.empty()) build(0, perm_.size());
  }

  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }

  std::optional<std::pair<std::size_t, double>> query(std::span<const double> q) const {
    if (ids_.empty()) return std::nullopt;
    Best best;
    search(0, q, best);
    return std::make_pair(best.id, best.d);
  }

 private:
  static constexpr std::size_t kLeaf = 8;

  struct Node {
    std::size_t lo = 0, hi = 0;  // range in perm_
    std::size_t axis = 0;
    double split = 0;
    std::size_t left = kNoVertex, right = kNoVertex;
    std::vector<double> box_lo, box_hi;
  };

  struct Best {
    std::size_t id = kNoVertex;
    double d = kInfinity;
  };

  double coord(std::size_t point, std::size_t axis) const { return coords_[point * dim_ + axis]; }

  std::size_t build(std::size_t lo, std::size_t hi) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    Node node;
    node.lo = lo;
    node.hi = hi;
    node.box_lo.assign(dim_, kInfinity);
    node.box_hi.assign(dim_, -kInfinity);
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        node.box_lo[j] = std::min(node.box_lo[j], coord(perm_[i], j));
        node.box_hi[j] = std::max(node.box_hi[j], coord(perm_[i], j));
      }
    if (hi - lo > kLeaf) {
      std::size_t axis = 0;
      for (std::size_t j = 1; j < dim_; ++j)
        if (node.box_hi[j] - node.box_lo[j] > node.box_hi[axis] - node.box_lo[axis]) axis = j;
      if (node.box_hi[axis] > node.box_lo[axis]) {
        const std::size_t mid = lo + (hi - lo) / 2;
        std::nth_element(perm_.begin() + lo, perm_.begin() + mid, perm_.begin() + hi,
                         [&](std::size_t a, std::size_t b) { return coord(a, axis) < coord(b, axis); });
        node.axis = axis;
        node.split = coord(perm_[mid], axis);
        node.left = build(lo, mid);
        node.right = build(mid, hi);
      }
    }
    nodes_[id] = std::move(node);
    return id;
  }

  double box_distance(const Node& node, std::span<const double> q) const {
    double d = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (q[j] < node.box_lo[j]) d = std::max(d, node.box_lo[j] - q[j]);
      else if (q[j] > node.box_hi[j]) d = std::max(d, q[j] - node.box_hi[j]);
    }
    return d;
  }

  void search(std::size_t id, std::span<const double> q, Best& best) const {
    const Node& node = nodes_[id];
    if (box_distance(node, q) > best.d) return;
    if (node.left == kNoVertex) {
      for (std::size_t i = node.lo; i < node.hi; ++i) {
        const std::size_t p = perm_[i];
        double d = 0;
        for (std::size_t j = 0; j < dim_; ++j) d = std::max(d, std::abs(coord(p, j) - q[j]));
        if (d < best.d || (d == best.d && ids_[p] < best.id)) {
          best.d = d;
          best.id = ids_[p];
        }
      }
      return;
    }
    const bool go_left = q[node.axis] < node.split;
    search(go_left ? node.left : node.right, q, best);
    search(go_left ? node.right : node.left, q, best);
  }

  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<std::size_t> ids_;
  std::vector<std::size_t> perm_;
  std::vector<Node> nodes_;
};

struct TreewidthStats {
  std::size_t rounds = 0;
  std::size_t index_rebuilds = 0;
  std::size_t subgraphs = 0;
  std::size_t boundary_vertices = 0;
  // Largest |(2Z - returned L-inf distance) - directly computed distance|
  // over all answered queries.
  double max_query_identity_error = 0;
};

// Exact greedy permutation starting from vertex 0 (all vertices tie at the
// start, and ties go to the smaller id). Index is LinfScanIndex or
// LinfKdIndex. The partition order defaults to max(ceil(sqrt m), the minimum
// order for the decomposition's width).
template <typename Index = LinfKdIndex>
GreedyPermutation exact_greedy_treewidth(const Graph& g, const TreeDecomposition& td, TreewidthStats* stats = nullptr,
                                         std::size_t order = 0) {
  const std::size_t n = g.size();
  GreedyPermutation perm;
  if (n == 1) {
    perm.order = {0};
    perm.radii = {kInfinity};
    return perm;
  }
  require_connected(g, "exact_greedy_treewidth");
  TreeDecomposition checked = td;
  validate_tree_decomposition(g, checked);
  if (order == 0)
    order = std::max(min_partition_order(checked.width),
                     static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(g.num_edges())))));
  const RestrictedPartition part = restricted_partition(g, checked, order);
  const double Z = (static_cast<double>(n) + 1) * g.max_weight() + 1;

  // Boundary graph H over all boundary vertices.
  std::vector<std::size_t> h_id(n, kNoVertex);
  std::vector<Vertex> h_vertex;
  std::vector<std::size_t> interior_of(n, kNoVertex);
  for (std::size_t i = 0; i < part.parts.size(); ++i) {
    for (Vertex v : part.parts[i].boundary)
      if (h_id[v] == kNoVertex) {
        h_id[v] = h_vertex.size();
        h_vertex.push_back(v);
      }
    for (Vertex v : part.parts[i].interior) interior_of[v] = i;
  }

  struct Local {
    std::vector<Vertex> vertices;  // sorted global ids
    Graph graph;
    std::vector<std::vector<double>> from_boundary;  // [j][local] within-subgraph distance, Z if unreachable
    std::vector<std::size_t> interior_local;         // local ids of interior vertices
    Index index;
  };
  std::vector<Local> locals(part.parts.size());
  std::vector<Edge> h_edges;
  std::vector<std::size_t> local_of(n, kNoVertex);
  for (std::size_t i = 0; i < part.parts.size(); ++i) {
    const Subgraph& sg = part.parts[i];
    Local& loc = locals[i];
    std::merge(sg.boundary.begin(), sg.boundary.end(), sg.interior.begin(), sg.interior.end(), std::back_inserter(loc.vertices));
    for (std::size_t x = 0; x < loc.vertices.size(); ++x) local_of[loc.vertices[x]] = x;
    std::vector<Edge> edges;
    for (std::size_t e : sg.edges) edges.push_back(Edge{local_of[g.edge(e).u], local_of[g.edge(e).v], g.edge(e).w});
    loc.graph = Graph(loc.vertices.size(), std::move(edges));
    for (Vertex v : sg.interior) loc.interior_local.push_back(local_of[v]);
    for (std::size_t j = 0; j < sg.boundary.size(); ++j) {
      const DistanceField f = dijkstra(loc.graph, local_of[sg.boundary[j]]);
      std::vector<double> row(loc.vertices.size());
      for (std::size_t x = 0; x < row.size(); ++x) row[x] = f[x] == kInfinity ? Z : f[x];
      for (std::size_t l = j + 1; l < sg.boundary.size(); ++l) {
        const double d = f[local_of[sg.boundary[l]]];
        if (d != kInfinity) h_edges.push_back(Edge{h_id[sg.boundary[j]], h_id[sg.boundary[l]], d});
      }
      loc.from_boundary.push_back(std::move(row));
    }
  }
  const Graph H(std::max<std::size_t>(h_vertex.size(), 1), h_edges);

  std::vector<double> d(h_vertex.size(), Z);    // boundary distance to the selection
  std::vector<double> first(n, Z);              // interior: within-subgraph distance to selected interiors
  std::vector<char> selected(n, 0);

  auto rebuild = [&](std::size_t i) {
    Local& loc = locals[i];
    const std::size_t dim = 1 + loc.from_boundary.size();
    std::vector<double> coords;
    std::vector<std::size_t> ids;
    for (std::size_t x : loc.interior_local) {
      const Vertex v = loc.vertices[x];
      if (selected[v]) continue;
      coords.push_back(first[v]);
      for (const auto& row : loc.from_boundary) coords.push_back(row[x]);
      ids.push_back(v);
    }
    loc.index = Index(dim, std::move(coords), std::move(ids));
    if (stats) ++stats->index_rebuilds;
  };
  for (std::size_t i = 0; i < locals.size(); ++i) rebuild(i);
  if (stats) {
    stats->subgraphs = part.parts.size();
    stats->boundary_vertices = h_vertex.size();
  }

  std::vector<double> q;
  for (std::size_t round = 0; round < n; ++round) {
    double best_d = -1;
    Vertex best = kNoVertex;
    auto offer = [&](double dist, Vertex v) {
      if (dist > best_d || (dist == best_d && v < best)) {
        best_d = dist;
        best = v;
      }
    };
    for (std::size_t i = 0; i < locals.size(); ++i) {
      const Local& loc = locals[i];
      if (loc.index.empty()) continue;
      const auto& bnd = part.parts[i].boundary;
      q.assign(1, 2 * Z);
      for (Vertex b : bnd) q.push_back(2 * Z - d[h_id[b]]);
      const auto hit = loc.index.query(q);
      const Vertex v = hit->first;
      const std::size_t x = local_of[v];
      double dist = first[v];
      for (std::size_t j = 0; j < bnd.size(); ++j) dist = std::min(dist, d[h_id[bnd[j]]] + loc.from_boundary[j][x]);
      if (stats) stats->max_query_identity_error = std::max(stats->max_query_identity_error, std::abs((2 * Z - hit->second) - dist));
      offer(dist, v);
    }
    for (std::size_t h = 0; h < h_vertex.size(); ++h)
      if (!selected[h_vertex[h]]) offer(d[h], h_vertex[h]);

    selected[best] = 1;
    perm.order.push_back(best);
    perm.radii.push_back(round == 0 ? kInfinity : best_d);
    if (stats) ++stats->rounds;

    if (h_id[best] != kNoVertex) {
      const DistanceField f = dijkstra(H, h_id[best]);
      for (std::size_t h = 0; h < h_vertex.size(); ++h) d[h] = std::min(d[h], f[h]);
      continue;
    }
    const std::size_t i = interior_of[best];
    Local& loc = locals[i];
    const std::size_t x = local_of[best];
    const DistanceField inside = dijkstra(loc.graph, x);
    for (std::size_t y : loc.interior_local) first[loc.vertices[y]] = std::min(first[loc.vertices[y]], inside[y]);
    rebuild(i);
    // H + S_i: local vertices come after the H vertices.
    std::vector<Edge> edges = H.edges();
    if (h_vertex.empty()) edges.clear();
    const std::size_t base = h_vertex.size();
    auto combined = [&](std::size_t local) {
      const Vertex v = loc.vertices[local];
      return h_id[v] != kNoVertex ? h_id[v] : base + local;
    };
    for (const Edge& e : loc.graph.edges()) edges.push_back(Edge{combined(e.u), combined(e.v), e.w});
    const Graph HS(base + loc.vertices.size(), std::move(edges));
    const DistanceField f = dijkstra(HS, combined(x));
    for (std::size_t h = 0; h < h_vertex.size(); ++h) d[h] = std::min(d[h], f[h]);
  }
  return perm;
}

}  // namespace gperm
