// r-nets, greedy permutations and k-center clustering for sparse graphs.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "gperm/graph.hpp"
#include "gperm/rng.hpp"
#include "gperm/types.hpp"

namespace gperm {

namespace detail {

// Net construction over a fixed visiting order. `field` is carried in and
// holds upper bounds on the distance of each vertex to already-covered
// territory; a visited vertex becomes a net point when it is not marked used
// and its field value is still >= r.
inline Net r_net_unchecked(const Graph& g, Weight r, std::span<const Vertex> order, std::span<const char> used,
                           DistanceField field, std::size_t* decrease_keys) {
  Net net;
  net.r = r;
  std::size_t updates = 0;
  for (Vertex v : order) {
    if (!used.empty() && used[v]) continue;
    if (field.delta[v] < r) continue;
    net.points.push_back(v);
    net.selection_delta.push_back(field.delta[v]);
    updates += pruned_dijkstra_relax(g, v, field);
  }
  net.cover_field = std::move(field);
  if (decrease_keys) *decrease_keys += updates;
  return net;
}

inline std::vector<Vertex> shuffled_vertices(std::size_t n, Rng& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  fisher_yates(std::span<Vertex>(order), rng);
  return order;
}

}  // namespace detail

// r-net by pruned Dijkstra over the given vertex order (a uniformly random
// order gives the expected O((n+m) log n) bound). Vertices flagged in `used`
// are never selected. `field` is either all +inf or carried over from a
// previous computation.
inline Net r_net(const Graph& g, Weight r, std::span<const Vertex> order, std::span<const char> used, DistanceField field,
                 std::size_t* decrease_keys = nullptr) {
  if (!(r > 0)) throw std::invalid_argument("r_net: r must be positive");
  if (field.size() != g.size()) throw std::invalid_argument("r_net: field size mismatch");
  if (!used.empty() && used.size() != g.size()) throw std::invalid_argument("r_net: used-set size mismatch");
  for (Vertex v : order) detail::check_vertex(g, v);
  require_connected(g, "r_net");
  return detail::r_net_unchecked(g, r, order, used, std::move(field), decrease_keys);
}

inline Net r_net(const Graph& g, Weight r, std::uint64_t seed, std::size_t* decrease_keys = nullptr) {
  Rng rng(seed);
  const auto order = detail::shuffled_vertices(g.size(), rng);
  return r_net(g, r, order, {}, DistanceField(g.size()), decrease_keys);
}

// Naive farthest-first traversal: one full Dijkstra per selected vertex.
// Ties between equally far vertices go to the smaller id.
inline GreedyPermutation exact_greedy(const Graph& g, Vertex first) {
  detail::check_vertex(g, first);
  require_connected(g, "exact_greedy");
  const std::size_t n = g.size();
  GreedyPermutation perm;
  perm.order.reserve(n);
  perm.radii.reserve(n);
  std::vector<Weight> delta(n, kInfinity);
  std::vector<char> taken(n, 0);
  Vertex next = first;
  Weight radius = kInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    perm.order.push_back(next);
    perm.radii.push_back(radius);
    taken[next] = 1;
    const DistanceField from = dijkstra(g, next);
    for (Vertex v = 0; v < n; ++v) delta[v] = std::min(delta[v], from.delta[v]);
    radius = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!taken[v] && delta[v] > radius) {
        radius = delta[v];
        next = v;
      }
  }
  return perm;
}

namespace detail {

inline GreedyPermutation trivial_permutation(std::size_t n, double eps) {
  GreedyPermutation perm;
  perm.eps = eps;
  for (Vertex v = 0; v < n; ++v) {
    perm.order.push_back(v);
    perm.radii.push_back(v == 0 ? kInfinity : 0);
  }
  return perm;
}

class PermutationBuilder {
 public:
  PermutationBuilder(std::size_t n, double eps) : placed_(n, 0) {
    perm_.eps = eps;
    perm_.order.reserve(n);
    perm_.radii.reserve(n);
  }

  bool placed(Vertex v) const { return placed_[v] != 0; }
  std::size_t count() const { return perm_.order.size(); }
  std::span<const char> placed_flags() const { return placed_; }

  void place(Vertex v, Weight radius) {
    placed_[v] = 1;
    perm_.order.push_back(v);
    perm_.radii.push_back(perm_.order.size() == 1 ? kInfinity : radius);
  }

  // Vertices at distance zero from the prefix go last with radius 0.
  GreedyPermutation finish() && {
    for (Vertex v = 0; v < placed_.size(); ++v)
      if (!placed_[v]) place(v, 0);
    return std::move(perm_);
  }

 private:
  std::vector<char> placed_;
  GreedyPermutation perm_;
};

}  // namespace detail

// (1+eps)-greedy permutation by a sequence of r-nets at radii
// (1+eps) Delta / (1+eps)^i, each restricted to vertices farther than r_i
// from the earlier nets. The top radius exceeds every distance, so the first
// block is a single vertex. Running time grows with log(spread).
inline GreedyPermutation approx_greedy_bounded_spread(const Graph& g, double eps, std::uint64_t seed,
                                                      GreedyStats* stats = nullptr) {
  if (!(eps > 0)) throw std::invalid_argument("approx_greedy_bounded_spread: eps must be positive");
  require_connected(g, "approx_greedy_bounded_spread");
  const std::size_t n = g.size();
  const Weight wmin = g.min_positive_weight();
  if (n == 1 || wmin == kInfinity) return detail::trivial_permutation(n, eps);

  Rng rng(seed);
  const Weight diameter = approx_diameter(g);
  detail::PermutationBuilder out(n, eps);
  std::vector<Source> sources;
  std::vector<char> used(n, 0);
  std::vector<Vertex> candidates;
  for (std::size_t level = 0;; ++level) {
    const Weight r = diameter / std::pow(1 + eps, static_cast<double>(level) - 1);
    sources.clear();
    for (Vertex v = 0; v < n; ++v)
      if (out.placed(v)) sources.push_back(Source{v, 0});
    DistanceField field = sources.empty() ? DistanceField(n) : dijkstra(g, sources, r);
    candidates.clear();
    for (Vertex v = 0; v < n; ++v) {
      used[v] = field.delta[v] < r;
      if (!used[v]) candidates.push_back(v);
    }
    fisher_yates(std::span<Vertex>(candidates), rng);
    std::size_t updates = 0;
    const Net net = detail::r_net_unchecked(g, r, candidates, used, std::move(field), &updates);
    for (Vertex v : net.points) out.place(v, r);
    if (stats) {
      ++stats->levels_processed;
      stats->decrease_keys += updates;
      stats->processed_levels.push_back(level);
    }
    if (r <= wmin || out.count() == n) break;
  }
  return std::move(out).finish();
}

// Contraction structure for the spread-free algorithm. Edges shorter than a
// threshold tau are contracted; the classes are the components of those
// edges. Built once as a Kruskal merge tree so that the class of any vertex
// at any threshold is a binary-lifting walk away.
class ContractedGraph {
 public:
  explicit ContractedGraph(const Graph& base) : base_(&base) {
    const std::size_t n = base.size();
    const std::size_t nodes = 2 * n - 1;
    merge_weight_.assign(nodes, -kInfinity);
    min_vertex_.resize(nodes);
    parent_.assign(nodes, kNoVertex);
    for (Vertex v = 0; v < n; ++v) min_vertex_[v] = v;
    std::vector<std::size_t> by_weight(base.num_edges());
    std::iota(by_weight.begin(), by_weight.end(), std::size_t{0});
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [&](std::size_t a, std::size_t b) { return base.edge(a).w < base.edge(b).w; });
    std::vector<std::size_t> uf(n), top(n);
    std::iota(uf.begin(), uf.end(), std::size_t{0});
    std::iota(top.begin(), top.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    std::size_t next = n;
    for (std::size_t e : by_weight) {
      const std::size_t a = find(base.edge(e).u), b = find(base.edge(e).v);
      if (a == b) continue;
      const std::size_t node = next++;
      merge_weight_[node] = base.edge(e).w;
      parent_[top[a]] = parent_[top[b]] = node;
      min_vertex_[node] = std::min(min_vertex_[top[a]], min_vertex_[top[b]]);
      uf[a] = b;
      top[b] = node;
    }
    node_count_ = next;
    std::size_t log = 1;
    while ((std::size_t{1} << log) < node_count_) ++log;
    up_.assign(log, std::vector<std::size_t>(node_count_));
    for (std::size_t x = 0; x < node_count_; ++x) up_[0][x] = parent_[x] == kNoVertex ? x : parent_[x];
    for (std::size_t j = 1; j < log; ++j)
      for (std::size_t x = 0; x < node_count_; ++x) up_[j][x] = up_[j - 1][up_[j - 1][x]];
    placed_.assign(node_count_, 0);
  }

  const Graph& base() const { return *base_; }
  std::size_t node_count() const { return node_count_; }

  void set_threshold(Weight tau) { tau_ = tau; }
  Weight threshold() const { return tau_; }

  // Merge-tree node naming the class of v at the current threshold.
  std::size_t class_of(Vertex v) const {
    std::size_t x = v;
    for (std::size_t j = up_.size(); j-- > 0;) {
      const std::size_t y = up_[j][x];
      if (y != x && merge_weight_[y] < tau_) x = y;
    }
    if (parent_[x] != kNoVertex && merge_weight_[parent_[x]] < tau_) x = parent_[x];
    return x;
  }

  // Super-vertex id: smallest original vertex in the class.
  Vertex representative(Vertex v) const { return min_vertex_[class_of(v)]; }
  Vertex class_representative(std::size_t node) const { return min_vertex_[node]; }

  // Whether the class rooted at `node` contains a vertex marked placed.
  bool class_placed(std::size_t node) const { return placed_[node] != 0; }
  void mark_placed(Vertex v) {
    for (std::size_t x = v; x != kNoVertex && !placed_[x]; x = parent_[x]) placed_[x] = 1;
  }

 private:
  const Graph* base_;
  std::size_t node_count_ = 0;
  Weight tau_ = 0;
  std::vector<Weight> merge_weight_;
  std::vector<Vertex> min_vertex_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<char> placed_;
};

// (1+eps)-greedy permutation whose running time does not depend on the
// spread. Each level only sees edges whose length is within a window around
// r: edges below min(e, 1) r / n^2 are contracted, edges of length >= r are
// dropped (no path through them is shorter than r), and levels with nothing
// to do are skipped. Levels step by 1+e with e = eps/2; the contraction
// error is at most min(e, 1) r / n, which keeps the total within 1+eps.
inline GreedyPermutation approx_greedy(const Graph& g, double eps, std::uint64_t seed, GreedyStats* stats = nullptr) {
  if (!(eps > 0)) throw std::invalid_argument("approx_greedy: eps must be positive");
  require_connected(g, "approx_greedy");
  const std::size_t n = g.size();
  if (stats) stats->edge_active_levels.assign(g.num_edges(), 0);
  if (n == 1 || g.min_positive_weight() == kInfinity) return detail::trivial_permutation(n, eps);

  const double run_eps = eps / 2;
  const double nd = static_cast<double>(n);
  const double shrink = std::min(run_eps, 1.0) / (nd * nd);
  const Weight diameter = approx_diameter(g);
  auto radius = [&](std::size_t level) { return diameter / std::pow(1 + run_eps, static_cast<double>(level) - 1); };
  // Smallest level index at which pred(radius(level)) holds; pred must be
  // monotone in the level index.
  auto first_level = [&](auto pred, double guess) {
    std::size_t i = guess > 0 ? static_cast<std::size_t>(guess) : 0;
    while (i > 0 && pred(radius(i - 1))) --i;
    while (!pred(radius(i))) ++i;
    return i;
  };
  const double log_ratio = std::log1p(run_eps);

  struct Event {
    std::size_t level;
    bool activate;
    std::size_t edge;
  };
  std::vector<Event> events;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Weight len = g.edge(e).w;
    if (len == 0) continue;
    // Active while shrink * r <= len < r.
    const std::size_t on = first_level([&](Weight r) { return len >= shrink * r; }, std::log(diameter * shrink / len) / log_ratio);
    const std::size_t off = first_level([&](Weight r) { return len >= r; }, std::log(diameter / len) / log_ratio);
    if (on >= off) continue;
    events.push_back(Event{on, true, e});
    events.push_back(Event{off, false, e});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.level != b.level ? a.level < b.level : (a.activate != b.activate ? !a.activate : a.edge < b.edge);
  });

  Rng rng(seed);
  ContractedGraph contracted(g);
  detail::PermutationBuilder out(n, eps);
  auto place = [&](Vertex v, Weight r) {
    out.place(v, r);
    contracted.mark_placed(v);
  };

  std::vector<std::size_t> active;
  std::vector<std::size_t> active_pos(g.num_edges(), kNoVertex);
  std::vector<std::size_t> local_id(contracted.node_count(), kNoVertex);
  std::vector<std::size_t> touched;
  std::vector<Vertex> removed_endpoints;
  std::vector<Edge> local_edges;
  std::vector<Source> sources;
  std::vector<char> used;
  std::vector<Vertex> candidates;

  std::size_t next_event = 0;
  std::size_t level = 0;
  while (out.count() < n) {
    if (active.empty()) {
      if (next_event == events.size()) break;
      if (events[next_event].level > level) {
        if (stats) stats->levels_skipped += events[next_event].level - level;
        level = events[next_event].level;
      }
    }
    removed_endpoints.clear();
    for (; next_event < events.size() && events[next_event].level <= level; ++next_event) {
      const Event& ev = events[next_event];
      if (ev.activate) {
        active_pos[ev.edge] = active.size();
        active.push_back(ev.edge);
      } else {
        const std::size_t pos = active_pos[ev.edge];
        active_pos[active.back()] = pos;
        active[pos] = active.back();
        active.pop_back();
        active_pos[ev.edge] = kNoVertex;
        removed_endpoints.push_back(g.edge(ev.edge).u);
        removed_endpoints.push_back(g.edge(ev.edge).v);
      }
    }

    const Weight r = radius(level);
    contracted.set_threshold(shrink * r);

    // Class graph over the active edges.
    touched.clear();
    local_edges.clear();
    auto local = [&](std::size_t node) {
      if (local_id[node] == kNoVertex) {
        local_id[node] = touched.size();
        touched.push_back(node);
      }
      return local_id[node];
    };
    for (std::size_t e : active) {
      const std::size_t cu = contracted.class_of(g.edge(e).u), cv = contracted.class_of(g.edge(e).v);
      if (cu == cv) continue;
      local_edges.push_back(Edge{local(cu), local(cv), g.edge(e).w});
    }

    // A class whose last active edge was just dropped is at least r away
    // from everything else; if none of its vertices is placed yet it must
    // join this level's net.
    for (Vertex x : removed_endpoints) {
      const std::size_t c = contracted.class_of(x);
      if (local_id[c] == kNoVertex && !contracted.class_placed(c)) place(contracted.class_representative(c), r);
    }

    if (!touched.empty()) {
      const Graph level_graph(touched.size(), local_edges);
      sources.clear();
      for (std::size_t i = 0; i < touched.size(); ++i)
        if (contracted.class_placed(touched[i])) sources.push_back(Source{i, 0});
      DistanceField field = sources.empty() ? DistanceField(touched.size()) : dijkstra(level_graph, sources, r);
      used.assign(touched.size(), 0);
      candidates.clear();
      for (std::size_t i = 0; i < touched.size(); ++i) {
        used[i] = field.delta[i] < r;
        if (!used[i]) candidates.push_back(i);
      }
      fisher_yates(std::span<Vertex>(candidates), rng);
      std::size_t updates = 0;
      const Net net = detail::r_net_unchecked(level_graph, r, candidates, used, std::move(field), &updates);
      for (Vertex i : net.points) place(contracted.class_representative(touched[i]), r);
      if (stats) stats->decrease_keys += updates;
    }
    for (std::size_t node : touched) local_id[node] = kNoVertex;

    if (stats) {
      ++stats->levels_processed;
      stats->processed_levels.push_back(level);
      for (std::size_t e : active) ++stats->edge_active_levels[e];
    }
    ++level;
  }
  return std::move(out).finish();
}

struct KCenterResult {
  std::vector<Vertex> centers;
  Weight radius = 0;
};

// 2-approximate k-center for positive integer weights: binary search on the
// candidate radius x, deciding each x by whether a net at radius 2x + 1/2 has
// at most k points. Distances are integers, so that net still covers within
// 2x, while its points are more than 2x apart and cannot share an optimal
// cluster once x >= opt.
inline KCenterResult k_center_integer(const Graph& g, std::size_t k, std::uint64_t seed) {
  const std::size_t n = g.size();
  if (k < 1 || k > n) throw std::invalid_argument("k_center_integer: k out of range");
  for (const Edge& e : g.edges())
    if (e.w < 1 || e.w != std::floor(e.w)) throw std::invalid_argument("k_center_integer: weights must be positive integers");
  require_connected(g, "k_center_integer");
  KCenterResult result;
  if (k == n) {
    result.centers.resize(n);
    std::iota(result.centers.begin(), result.centers.end(), Vertex{0});
    return result;
  }
  Rng rng(seed);
  auto decide = [&](Weight x) {
    const auto order = detail::shuffled_vertices(n, rng);
    return detail::r_net_unchecked(g, 2 * x + 0.5, order, {}, DistanceField(n), nullptr);
  };
  auto lo = static_cast<long long>(1);
  auto hi = std::max<long long>(1, static_cast<long long>(approx_diameter(g)));
  Net best = decide(static_cast<Weight>(hi));
  while (lo < hi) {
    const long long mid = lo + (hi - lo) / 2;
    Net net = decide(static_cast<Weight>(mid));
    if (net.points.size() <= k) {
      hi = mid;
      best = std::move(net);
    } else {
      lo = mid + 1;
    }
  }
  result.centers = best.points;
  result.radius = *std::max_element(best.cover_field.delta.begin(), best.cover_field.delta.end());
  return result;
}

struct PrefixClustering {
  std::vector<Vertex> centers;
  Weight radius_bound = 0;
};

// The first k points of a (1+eps)-greedy permutation cover everything within
// (1+eps) times the radius of point k+1; that is a 2(1+eps)-approximation of
// the optimal k-center radius.
inline PrefixClustering prefix_k_center(const GreedyPermutation& perm, std::size_t k) {
  const std::size_t n = perm.size();
  if (k < 1 || k > n) throw std::invalid_argument("prefix_k_center: k out of range");
  PrefixClustering out;
  out.centers.assign(perm.order.begin(), perm.order.begin() + static_cast<std::ptrdiff_t>(k));
  if (n == 1) return out;
  // k = n: every point is a center.
  out.radius_bound = k < n ? (1 + perm.eps) * perm.radii[k] : 0;
  return out;
}

}  // namespace gperm
