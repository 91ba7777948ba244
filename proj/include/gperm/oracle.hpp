// Brute-force ground truth used to certify the fast algorithms.
//
// Nothing in here shares code with the algorithms it judges: all-pairs
// distances come from an ordered-set Dijkstra written separately from
// gperm::dijkstra, and every check works off the dense distance matrix.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gperm/graph.hpp"
#include "gperm/types.hpp"

namespace gperm::oracle {

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kInfinity) {
    for (std::size_t i = 0; i < n; ++i) d_[i * n + i] = 0;
  }

  std::size_t size() const { return n_; }
  Weight operator()(std::size_t u, std::size_t v) const { return d_[u * n_ + v]; }
  Weight& at(std::size_t u, std::size_t v) { return d_[u * n_ + v]; }

 private:
  std::size_t n_ = 0;
  std::vector<Weight> d_;
};

struct Limits {
  std::size_t apsp_max_vertices = 2000;
  std::size_t kcenter_exhaustive_max = 14;
};

// Exact all-pairs distances. Symmetrized with min(d(u,v), d(v,u)) so that the
// matrix is exactly symmetric even when floating-point sums differ by
// direction.
inline DistanceMatrix apsp_exact(const Graph& g, const Limits& limits = {}) {
  const std::size_t n = g.size();
  if (n > limits.apsp_max_vertices)
    throw std::invalid_argument("apsp_exact: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(limits.apsp_max_vertices));
  DistanceMatrix dm(n);
  std::vector<Weight> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInfinity);
    dist[s] = 0;
    std::set<std::pair<Weight, std::size_t>> frontier{{0.0, s}};
    while (!frontier.empty()) {
      const auto [d, u] = *frontier.begin();
      frontier.erase(frontier.begin());
      for (const Arc& a : g.neighbors(u)) {
        const Weight nd = d + a.w;
        if (nd < dist[a.to]) {
          if (dist[a.to] != kInfinity) frontier.erase({dist[a.to], a.to});
          dist[a.to] = nd;
          frontier.emplace(nd, a.to);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] == kInfinity) throw std::invalid_argument("apsp_exact: graph is disconnected");
      dm.at(s, v) = dist[v];
    }
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const Weight m = std::min(dm(u, v), dm(v, u));
      dm.at(u, v) = m;
      dm.at(v, u) = m;
    }
  return dm;
}

// Euclidean distance matrix for row-major coordinates.
inline DistanceMatrix euclidean_matrix(std::span<const double> coords, std::size_t n, std::size_t d) {
  DistanceMatrix dm(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      double s = 0;
      for (std::size_t j = 0; j < d; ++j) {
        const double t = coords[u * d + j] - coords[v * d + j];
        s += t * t;
      }
      dm.at(u, v) = dm.at(v, u) = std::sqrt(s);
    }
  return dm;
}

// |{ {u,v} : u != v, d(u,v) <= r }|
inline std::size_t exact_count(const DistanceMatrix& dm, Weight r) {
  std::size_t count = 0;
  for (std::size_t u = 0; u < dm.size(); ++u)
    for (std::size_t v = u + 1; v < dm.size(); ++v)
      if (dm(u, v) <= r) ++count;
  return count;
}

inline std::vector<Weight> sorted_pair_distances(const DistanceMatrix& dm) {
  std::vector<Weight> all;
  all.reserve(dm.size() * (dm.size() - 1) / 2);
  for (std::size_t u = 0; u < dm.size(); ++u)
    for (std::size_t v = u + 1; v < dm.size(); ++v) all.push_back(dm(u, v));
  std::sort(all.begin(), all.end());
  return all;
}

// k-th smallest pairwise distance, 1-based.
inline Weight exact_select(const DistanceMatrix& dm, std::size_t k) {
  const std::size_t pairs = dm.size() * (dm.size() - 1) / 2;
  if (k < 1 || k > pairs) throw std::invalid_argument("exact_select: k out of range");
  return sorted_pair_distances(dm)[k - 1];
}

struct Verdict {
  bool pass = true;
  std::string witness;
  // verify_eps_greedy: the certificate radii r_1 >= r_2 >= ... on success.
  std::vector<Weight> certificate;
};

// Relative slack absorbing last-bit differences between independently
// summed path lengths.
inline constexpr double kRelTol = 1e-9;

inline bool leq(Weight a, Weight b) { return a <= b + kRelTol * std::max<Weight>(1, std::abs(b)); }

inline Verdict verify_net(const DistanceMatrix& dm, std::span<const Vertex> net, Weight r, double cover_factor = 1) {
  Verdict out;
  const std::size_t n = dm.size();
  if (net.empty()) {
    out.pass = false;
    out.witness = "empty net";
    return out;
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (net[i] >= n) {
      out.pass = false;
      out.witness = "net point " + std::to_string(net[i]) + " out of range";
      return out;
    }
    for (std::size_t j = i + 1; j < net.size(); ++j)
      if (!leq(r, dm(net[i], net[j]))) {
        out.pass = false;
        out.witness = "packing: d(" + std::to_string(net[i]) + "," + std::to_string(net[j]) + ") = " + std::to_string(dm(net[i], net[j])) + " < r";
        return out;
      }
  }
  Vertex worst = kNoVertex;
  Weight worst_d = 0;
  for (std::size_t v = 0; v < n; ++v) {
    Weight best = kInfinity;
    for (Vertex p : net) best = std::min(best, dm(v, p));
    if (!leq(best, cover_factor * r) && (worst == kNoVertex || best > worst_d)) {
      worst = v;
      worst_d = best;
    }
  }
  if (worst != kNoVertex) {
    out.pass = false;
    out.witness = "covering: vertex " + std::to_string(worst) + " at distance " + std::to_string(worst_d);
  }
  return out;
}

// Checks the existential (1+eps)-greedy definition: with ecc_i the largest
// distance of any point from the first i points and sep_i the smallest
// pairwise distance among them, a non-increasing r_i in
// [ecc_i / (1+eps), min(ecc_i, sep_i)] must exist. Assigning each r_i the
// largest admissible value is optimal, so the greedy pass decides it.
inline Verdict verify_eps_greedy(const DistanceMatrix& dm, const GreedyPermutation& perm, double eps) {
  Verdict out;
  const std::size_t n = dm.size();
  if (perm.order.size() != n) {
    out.pass = false;
    out.witness = "not a permutation: length " + std::to_string(perm.order.size()) + " != " + std::to_string(n);
    return out;
  }
  std::vector<char> seen(n, 0);
  for (Vertex v : perm.order) {
    if (v >= n || seen[v]) {
      out.pass = false;
      out.witness = "not a permutation: bad or repeated vertex " + std::to_string(v);
      return out;
    }
    seen[v] = 1;
  }
  std::vector<Weight> to_prefix(n, kInfinity);
  Weight sep = kInfinity;
  Weight prev = kInfinity;
  out.certificate.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex p = perm.order[i];
    sep = std::min(sep, to_prefix[p]);
    for (std::size_t v = 0; v < n; ++v) to_prefix[v] = std::min(to_prefix[v], dm(p, v));
    const Weight ecc = *std::max_element(to_prefix.begin(), to_prefix.end());
    const Weight upper = std::min({ecc, sep, prev});
    const Weight lower = ecc / (1 + eps);
    if (!leq(lower, upper)) {
      out.pass = false;
      out.witness = "prefix " + std::to_string(i + 1) + ": ecc " + std::to_string(ecc) + " sep " + std::to_string(sep) +
                    " prev " + std::to_string(prev) + " admits no radius";
      out.certificate.clear();
      return out;
    }
    out.certificate.push_back(upper);
    prev = upper;
  }
  return out;
}

// Covering radius of a center set: max over v of min distance to a center.
inline Weight covering_radius(const DistanceMatrix& dm, std::span<const Vertex> centers) {
  Weight worst = 0;
  for (std::size_t v = 0; v < dm.size(); ++v) {
    Weight best = kInfinity;
    for (Vertex c : centers) best = std::min(best, dm(v, c));
    worst = std::max(worst, best);
  }
  return worst;
}

// Optimal k-center radius by enumeration of all k-subsets.
inline Weight kcenter_opt(const DistanceMatrix& dm, std::size_t k, const Limits& limits = {}) {
  const std::size_t n = dm.size();
  if (k < 1 || k > n) throw std::invalid_argument("kcenter_opt: k out of range");
  if (n > limits.kcenter_exhaustive_max && !(n <= 100 && k <= 3))
    throw std::invalid_argument("kcenter_opt: instance too large for enumeration");
  if (k == n) return 0;
  std::vector<Vertex> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  Weight best = kInfinity;
  while (true) {
    best = std::min(best, covering_radius(dm, pick));
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

// Farthest-first traversal straight off the matrix; ties go to the smaller id.
inline GreedyPermutation brute_greedy(const DistanceMatrix& dm, Vertex first) {
  const std::size_t n = dm.size();
  if (first >= n) throw std::invalid_argument("brute_greedy: first out of range");
  GreedyPermutation perm;
  std::vector<Weight> to_prefix(n, kInfinity);
  std::vector<char> taken(n, 0);
  Vertex next = first;
  Weight radius = kInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    perm.order.push_back(next);
    perm.radii.push_back(radius);
    taken[next] = 1;
    for (std::size_t v = 0; v < n; ++v) to_prefix[v] = std::min(to_prefix[v], dm(next, v));
    radius = -1;
    for (std::size_t v = 0; v < n; ++v)
      if (!taken[v] && to_prefix[v] > radius) {
        radius = to_prefix[v];
        next = v;
      }
  }
  return perm;
}

}  // namespace gperm::oracle
