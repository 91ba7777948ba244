// Approximate counting of r-short pairs and k-th distance selection on planar
// graphs, over a recursive balanced decomposition into patches.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <queue>
#include <span>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

#include "gperm/graph.hpp"

namespace gperm {

struct HdNode {
  std::vector<Vertex> vertices;  // sorted
  std::vector<Vertex> boundary;  // sorted; vertices with a neighbor outside the patch
  std::size_t left = kNoVertex;
  std::size_t right = kNoVertex;
  std::size_t parent = kNoVertex;
  std::size_t depth = 0;

  bool leaf() const { return left == kNoVertex; }
};

struct HierarchicalDecomposition {
  std::vector<HdNode> nodes;  // nodes[0] is the root
  std::size_t height = 0;
  std::size_t max_boundary = 0;
  // Patches whose induced subgraph is disconnected (median splits of
  // star-like patches cannot always stay connected).
  std::size_t disconnected_patches = 0;
};

inline void require_planar_edge_bound(const Graph& g, const char* who) {
  const std::size_t n = g.size();
  if (n >= 3 && g.num_edges() > 3 * n - 6)
    throw GraphError(std::string(who) + ": " + std::to_string(g.num_edges()) + " edges exceed 3n-6 for a declared planar graph");
}

namespace detail {

// Breadth-first order of the patch from a far vertex of its first
// component, restarting at the smallest unvisited vertex. connected reports
// whether the first search covered the patch.
inline std::vector<Vertex> patch_bfs_order(const Graph& g, std::span<const Vertex> patch, std::span<const std::size_t> patch_of,
                                           std::size_t id, std::vector<std::size_t>& mark_of, std::size_t& marks, bool& connected) {
  auto bfs = [&](Vertex start, std::size_t mark, std::vector<Vertex>& out) {
    std::size_t head = out.size();
    out.push_back(start);
    mark_of[start] = mark;
    while (head < out.size()) {
      const Vertex v = out[head++];
      for (const Arc& a : g.neighbors(v))
        if (patch_of[a.to] == id && mark_of[a.to] != mark) {
          mark_of[a.to] = mark;
          out.push_back(a.to);
        }
    }
  };
  std::vector<Vertex> probe;
  bfs(patch.front(), ++marks, probe);
  std::vector<Vertex> order;
  const std::size_t mark = ++marks;
  bfs(probe.back(), mark, order);
  connected = order.size() == patch.size();
  for (Vertex v : patch)
    if (mark_of[v] != mark) bfs(v, mark, order);
  return order;
}

}  // namespace detail

// Binary patch tree: each patch splits into the first half and the second
// half of a breadth-first order, so children hold at most ceil(|C|/2) <= 2/3
// |C| vertices; leaves are single vertices.
inline HierarchicalDecomposition build_hd(const Graph& g) {
  require_planar_edge_bound(g, "build_hd");
  require_connected(g, "build_hd");
  const std::size_t n = g.size();
  HierarchicalDecomposition hd;
  std::vector<std::size_t> stamp(n, kNoVertex), seen_stamp(n, 0);
  std::size_t seen = 0;
  HdNode root;
  root.vertices.resize(n);
  for (Vertex v = 0; v < n; ++v) root.vertices[v] = v;
  hd.nodes.push_back(std::move(root));
  for (std::size_t id = 0; id < hd.nodes.size(); ++id) {
    for (Vertex v : hd.nodes[id].vertices) stamp[v] = id;
    {
      HdNode& node = hd.nodes[id];
      for (Vertex v : node.vertices)
        for (const Arc& a : g.neighbors(v))
          if (stamp[a.to] != id) {
            node.boundary.push_back(v);
            break;
          }
      hd.max_boundary = std::max(hd.max_boundary, node.boundary.size());
      hd.height = std::max(hd.height, node.depth);
    }
    if (hd.nodes[id].vertices.size() == 1) continue;
    bool connected = true;
    const std::vector<Vertex> order = detail::patch_bfs_order(g, hd.nodes[id].vertices, stamp, id, seen_stamp, seen, connected);
    if (!connected) ++hd.disconnected_patches;
    const std::size_t half = (order.size() + 1) / 2;
    HdNode a, b;
    a.vertices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
    b.vertices.assign(order.begin() + static_cast<std::ptrdiff_t>(half), order.end());
    std::sort(a.vertices.begin(), a.vertices.end());
    std::sort(b.vertices.begin(), b.vertices.end());
    a.parent = b.parent = id;
    a.depth = b.depth = hd.nodes[id].depth + 1;
    hd.nodes[id].left = hd.nodes.size();
    hd.nodes[id].right = hd.nodes.size() + 1;
    hd.nodes.push_back(std::move(a));
    hd.nodes.push_back(std::move(b));
  }
  return hd;
}

// query(u, v) must lie in [d(u, v), (1 + eps()) d(u, v)].
class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;
  virtual double eps() const = 0;
  virtual Weight query(Vertex u, Vertex v) const = 0;
  // Batched form; the default just loops.
  virtual std::vector<Weight> query_from(Vertex u, std::span<const Vertex> targets) const {
    std::vector<Weight> out;
    out.reserve(targets.size());
    for (Vertex v : targets) out.push_back(query(u, v));
    return out;
  }
};

// Dijkstra-backed oracle; exact, so it satisfies the contract for every eps.
// Rows of single-source distances are memoized up to a memory budget, since
// the same boundary vertices are queried for every radius.
class ExactOracle final : public DistanceOracle {
 public:
  explicit ExactOracle(const Graph& g, std::size_t cache_bytes = std::size_t{256} << 20)
      : g_(&g), rows_(g.size()), row_budget_(cache_bytes / (sizeof(Weight) * g.size())) {
    require_connected(g, "exact_oracle");
  }
  ExactOracle(const ExactOracle& o) : g_(o.g_), rows_(o.g_->size()), row_budget_(o.row_budget_) {}

  double eps() const override { return 0; }

  Weight query(Vertex u, Vertex v) const override {
    if (u == v) return 0;
    return (*row(u))[v];
  }

  std::vector<Weight> query_from(Vertex u, std::span<const Vertex> targets) const override {
    const std::shared_ptr<const std::vector<Weight>> r = row(u);
    std::vector<Weight> out;
    out.reserve(targets.size());
    for (Vertex v : targets) out.push_back((*r)[v]);
    return out;
  }

 private:
  std::shared_ptr<const std::vector<Weight>> row(Vertex u) const {
    {
      std::lock_guard lock(mutex_);
      if (rows_[u]) return rows_[u];
    }
    auto fresh = std::make_shared<const std::vector<Weight>>(dijkstra(*g_, u).delta);
    std::lock_guard lock(mutex_);
    if (!rows_[u] && cached_ < row_budget_) {
      rows_[u] = fresh;
      ++cached_;
    }
    return fresh;
  }

  const Graph* g_;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const std::vector<Weight>>> rows_;
  mutable std::size_t cached_ = 0;
  std::size_t row_budget_;
};

inline ExactOracle exact_oracle(const Graph& g) { return ExactOracle(g); }

namespace detail {

// Distance from every vertex of the patch to the patch boundary inside the
// induced subgraph, with the nearest boundary vertex (smallest id on ties).
struct NearestBoundary {
  std::vector<Weight> dist;
  std::vector<Vertex> label;
};

inline void nearest_boundary(const Graph& g, const HdNode& patch, std::span<const std::size_t> patch_of, std::size_t id,
                             NearestBoundary& out) {
  using Item = std::tuple<Weight, Vertex, Vertex>;  // (distance, label, vertex)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (Vertex v : patch.vertices) {
    out.dist[v] = kInfinity;
    out.label[v] = kNoVertex;
  }
  for (Vertex b : patch.boundary) {
    out.dist[b] = 0;
    out.label[b] = b;
    heap.emplace(0.0, b, b);
  }
  while (!heap.empty()) {
    const auto [d, label, v] = heap.top();
    heap.pop();
    if (d != out.dist[v] || label != out.label[v]) continue;
    for (const Arc& a : g.neighbors(v)) {
      if (patch_of[a.to] != id) continue;
      const Weight nd = d + a.w;
      if (nd < out.dist[a.to] || (nd == out.dist[a.to] && label < out.label[a.to])) {
        out.dist[a.to] = nd;
        out.label[a.to] = label;
        heap.emplace(nd, label, a.to);
      }
    }
  }
}

// Number of (x, y) in xs x ys with x + y <= r; both sorted ascending.
inline std::uint64_t pairs_within(const std::vector<Weight>& xs, const std::vector<Weight>& ys, Weight r) {
  std::uint64_t count = 0;
  std::size_t j = ys.size();
  for (Weight x : xs) {
    while (j > 0 && x + ys[j - 1] > r) --j;
    count += j;
  }
  return count;
}

}  // namespace detail

// Returns alpha with |P(<= r)| <= alpha <= |P(<= (3+eps) r)|. Every pair is
// charged at the decomposition node whose two children separate it: with
// a(x) the distance of x to the boundary of its child and g(x) the nearest
// such boundary vertex, (x, y) counts when a(x) + a(y) <= r and the oracle
// puts g(x), g(y) within (2+eps) r. Requires oracle.eps() <= eps/2.
inline std::uint64_t count_short_pairs(const Graph& g, const HierarchicalDecomposition& hd, Weight r, double eps,
                                       const DistanceOracle& oracle, std::size_t threads = 1) {
  if (!(r > 0)) throw std::invalid_argument("count_short_pairs: r must be positive");
  if (!(eps > 0)) throw std::invalid_argument("count_short_pairs: eps must be positive");
  if (oracle.eps() > eps / 2) throw std::invalid_argument("count_short_pairs: oracle eps must be at most eps/2");
  const std::size_t n = g.size();
  const Weight reach = (2 + eps) * r;
  threads = std::max<std::size_t>(threads, 1);

  std::vector<std::size_t> internal;
  for (std::size_t id = 0; id < hd.nodes.size(); ++id)
    if (!hd.nodes[id].leaf()) internal.push_back(id);

  auto work = [&](std::size_t worker, std::uint64_t& total) {
    std::vector<std::size_t> patch_of(n, kNoVertex);
    std::vector<std::size_t> slot(n, kNoVertex);
    detail::NearestBoundary near{std::vector<Weight>(n, kInfinity), std::vector<Vertex>(n, kNoVertex)};
    for (std::size_t t = worker; t < internal.size(); t += threads) {
      const HdNode& node = hd.nodes[internal[t]];
      std::vector<std::vector<Weight>> lists[2];
      std::vector<Vertex> border[2];
      for (int side = 0; side < 2; ++side) {
        const std::size_t cid = side == 0 ? node.left : node.right;
        const HdNode& child = hd.nodes[cid];
        for (Vertex v : child.vertices) patch_of[v] = cid;
        detail::nearest_boundary(g, child, patch_of, cid, near);
        border[side] = child.boundary;
        for (std::size_t i = 0; i < child.boundary.size(); ++i) slot[child.boundary[i]] = i;
        lists[side].assign(child.boundary.size(), {});
        for (Vertex v : child.vertices)
          if (near.dist[v] <= r) lists[side][slot[near.label[v]]].push_back(near.dist[v]);
        for (auto& l : lists[side]) std::sort(l.begin(), l.end());
      }
      std::vector<Vertex> targets;
      std::vector<std::size_t> target_slot;
      for (std::size_t j = 0; j < border[1].size(); ++j)
        if (!lists[1][j].empty()) {
          targets.push_back(border[1][j]);
          target_slot.push_back(j);
        }
      if (targets.empty()) continue;
      for (std::size_t i = 0; i < border[0].size(); ++i) {
        if (lists[0][i].empty()) continue;
        const std::vector<Weight> dist = oracle.query_from(border[0][i], targets);
        for (std::size_t t2 = 0; t2 < targets.size(); ++t2)
          if (dist[t2] <= reach) total += detail::pairs_within(lists[0][i], lists[1][target_slot[t2]], r);
      }
    }
  };

  std::vector<std::uint64_t> partial(threads, 0);
  if (threads == 1) {
    work(0, partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w, std::ref(partial[w]));
    for (auto& th : pool) th.join();
  }
  std::uint64_t alpha = 0;
  for (std::uint64_t p : partial) alpha += p;
  return alpha;
}

struct SelectResult {
  Weight alpha = 0;
  double factor = 0;
  Weight r_star = 0;
  std::size_t grid_index = 0;
};

// Bracket for the k-th smallest pairwise distance (1-based):
// d_(k) in [alpha, factor * alpha] with factor = (3+eps)(1+eps). Binary
// search over the grid w_min (1+eps)^j up to the first value >= n w_max for
// the smallest r with count_short_pairs(r) >= k.
inline SelectResult select_kth_distance(const Graph& g, const HierarchicalDecomposition& hd, std::uint64_t k, double eps,
                                        const DistanceOracle& oracle, std::size_t threads = 1) {
  const std::uint64_t n = g.size();
  const std::uint64_t pairs = n * (n - 1) / 2;
  if (k < 1 || k > pairs) throw std::invalid_argument("select_kth_distance: k out of range");
  if (!(eps > 0)) throw std::invalid_argument("select_kth_distance: eps must be positive");
  const Weight wmin = g.min_positive_weight();
  if (wmin == kInfinity || std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.w == 0; }))
    throw GraphError("select_kth_distance: edge weights must be positive");
  const Weight top = static_cast<double>(n) * g.max_weight();
  const double ratio = 1 + eps;
  auto grid = [&](std::size_t j) { return wmin * std::pow(ratio, static_cast<double>(j)); };
  std::size_t hi = static_cast<std::size_t>(std::ceil(std::log(top / wmin) / std::log(ratio)));
  while (grid(hi) < top) ++hi;
  std::size_t lo = 0;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (count_short_pairs(g, hd, grid(mid), eps, oracle, threads) >= k) hi = mid;
    else lo = mid + 1;
  }
  SelectResult out;
  out.grid_index = lo;
  out.r_star = grid(lo);
  out.alpha = out.r_star / ratio;
  out.factor = (3 + eps) * ratio;
  return out;
}

}  // namespace gperm
