// High-dimensional Euclidean pipeline: random projection, sensitive hashing,
// approximate r-nets, approximate nearest neighbors, an approximate min-max
// spanning tree and approximate greedy permutations built from them.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gperm/graph.hpp"
#include "gperm/rng.hpp"
#include "gperm/types.hpp"

namespace gperm {

class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t n, std::size_t dim, std::vector<double> coords) : n_(n), dim_(dim), coords_(std::move(coords)) {
    if (n_ < 1 || dim_ < 1) throw std::invalid_argument("PointSet: need n >= 1 and d >= 1");
    if (coords_.size() != n_ * dim_) throw std::invalid_argument("PointSet: coordinate count mismatch");
    for (double x : coords_)
      if (!std::isfinite(x)) throw std::invalid_argument("PointSet: non-finite coordinate");
  }

  std::size_t size() const { return n_; }
  std::size_t dim() const { return dim_; }
  std::span<const double> row(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  const std::vector<double>& coords() const { return coords_; }

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double t = a[j] - b[j];
    s += t * t;
  }
  return std::sqrt(s);
}

inline double distance(const PointSet& pts, std::size_t i, std::size_t j) { return euclidean(pts.row(i), pts.row(j)); }

inline PointSet parse_points(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!detail::next_content_line(in, line, lineno)) throw ParseError(lineno, "missing header 'n d'");
  std::istringstream header(line);
  const auto n = detail::read_field<long long>(header, lineno, "point count");
  const auto d = detail::read_field<long long>(header, lineno, "dimension");
  detail::expect_end(header, lineno);
  if (n < 1 || d < 1) throw ParseError(lineno, "need n >= 1 and d >= 1");
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n * d));
  for (long long i = 0; i < n; ++i) {
    if (!detail::next_content_line(in, line, lineno)) throw ParseError(lineno, "expected " + std::to_string(n) + " points");
    std::istringstream ss(line);
    for (long long j = 0; j < d; ++j) {
      const auto x = detail::read_field<double>(ss, lineno, "coordinate");
      if (!std::isfinite(x)) throw ParseError(lineno, "non-finite coordinate");
      coords.push_back(x);
    }
    detail::expect_end(ss, lineno);
  }
  return PointSet(static_cast<std::size_t>(n), static_cast<std::size_t>(d), std::move(coords));
}

inline void write_points(std::ostream& out, const PointSet& pts) {
  const auto old = out.precision(17);
  out << pts.size() << ' ' << pts.dim() << '\n';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto row = pts.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
  out.precision(old);
}

inline bool has_duplicate_points(const PointSet& pts) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    const auto ra = pts.row(a), rb = pts.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::sort(idx.begin(), idx.end(), less);
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (!less(idx[i - 1], idx[i])) return true;
  return false;
}

inline std::size_t jl_target_dimension(std::size_t n, double eps) {
  return static_cast<std::size_t>(std::ceil(8 * std::log(static_cast<double>(n)) / (eps * eps)));
}

// Gaussian random projection to ceil(8 ln n / eps^2) dimensions; the input is
// returned unchanged when it is already that small.
inline PointSet jl_project(const PointSet& pts, double eps, std::uint64_t seed) {
  if (!(eps > 0)) throw std::invalid_argument("jl_project: eps must be positive");
  const std::size_t target = std::max<std::size_t>(1, jl_target_dimension(pts.size(), eps));
  if (pts.dim() <= target) return pts;
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(target));
  std::vector<double> matrix(target * pts.dim());
  for (double& x : matrix) x = gauss(rng) * scale;
  std::vector<double> out(pts.size() * target, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto row = pts.row(i);
    for (std::size_t t = 0; t < target; ++t) {
      const double* m = matrix.data() + t * pts.dim();
      double s = 0;
      for (std::size_t j = 0; j < pts.dim(); ++j) s += m[j] * row[j];
      out[i * target + t] = s;
    }
  }
  return PointSet(pts.size(), target, std::move(out));
}

// Collision probability of h(x) = floor((a.x + b) / w), a ~ N(0, I),
// b ~ U[0, w), for two points at distance s.
inline double gaussian_bucket_collision(double s, double w) {
  if (s <= 0) return 1.0;
  const double t = w / s;
  const double tail = 0.5 * std::erfc(t / std::numbers::sqrt2);
  return 1 - 2 * tail - 2 / (std::sqrt(2 * std::numbers::pi) * t) * (1 - std::exp(-t * t / 2));
}

// (delta, c*delta, p1, p2)-sensitive family built from Gaussian bucket hashes:
// each sampled function concatenates `group` independent buckets of width
// 4*delta, so p1 = p(delta)^group and p2 = p(c*delta)^group.
class HashFamily {
 public:
  HashFamily(std::size_t dim, double delta, double c, std::size_t group, std::size_t count, std::uint64_t seed)
      : dim_(dim), delta_(delta), c_(c), width_(4 * delta), group_(group), count_(count) {
    if (!(delta > 0) || !(c > 1) || group < 1 || count < 1 || dim < 1)
      throw std::invalid_argument("HashFamily: need delta > 0, c > 1, group >= 1, count >= 1");
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    a_.resize(count_ * group_ * dim_);
    for (double& x : a_) x = gauss(rng);
    b_.resize(count_ * group_);
    for (double& x : b_) x = uniform01(rng) * width_;
  }

  // Family sized for an n-point net at radius delta: group = ceil(log2 n),
  // count = ceil((alpha / p1) ln n).
  static HashFamily for_points(std::size_t n, std::size_t dim, double delta, double c, std::uint64_t seed, double alpha = 2) {
    const std::size_t m = std::max<std::size_t>(n, 2);
    const auto group = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log2(static_cast<double>(m)))));
    const double p1 = std::pow(gaussian_bucket_collision(1.0, 4.0), static_cast<double>(group));
    const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(alpha / p1 * std::log(static_cast<double>(m)))));
    return HashFamily(dim, delta, c, group, count, seed);
  }

  std::size_t size() const { return count_; }
  std::size_t group() const { return group_; }
  double delta() const { return delta_; }
  double c() const { return c_; }
  double p1() const { return std::pow(gaussian_bucket_collision(delta_, width_), static_cast<double>(group_)); }
  double p2() const { return std::pow(gaussian_bucket_collision(c_ * delta_, width_), static_cast<double>(group_)); }

  std::uint64_t key(std::size_t fn, std::span<const double> x) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ fn;
    for (std::size_t g = 0; g < group_; ++g) {
      const std::size_t base = fn * group_ + g;
      const double* a = a_.data() + base * dim_;
      double s = b_[base];
      for (std::size_t j = 0; j < dim_; ++j) s += a[j] * x[j];
      const auto bucket = static_cast<std::int64_t>(std::floor(s / width_));
      h ^= static_cast<std::uint64_t>(bucket) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 33;
    }
    return h;
  }

 private:
  std::size_t dim_;
  double delta_;
  double c_;
  double width_;
  std::size_t group_;
  std::size_t count_;
  std::vector<double> a_;
  std::vector<double> b_;
};

namespace detail {

using Buckets = std::unordered_map<std::uint64_t, std::vector<std::size_t>>;

// One approximate-net pass over `members` (sorted point indices). Members
// already placed mark their colliding neighbors within c*r first; the rest
// are swept in index order, every unmarked one joins the net and marks its
// colliding neighbors within c*r. Distances are always exact, so covering
// within c*r holds unconditionally.
inline std::vector<std::size_t> approx_net_pass(const PointSet& pts, const PointSet& hashed, std::span<const std::size_t> members,
                                                std::span<const char> placed, double r, double c, std::uint64_t seed) {
  const HashFamily family = HashFamily::for_points(members.size(), hashed.dim(), r, c, seed);
  std::vector<Buckets> tables(family.size());
  std::vector<std::uint64_t> keys(members.size() * family.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t f = 0; f < family.size(); ++f) {
      const std::uint64_t k = family.key(f, hashed.row(members[i]));
      keys[i * family.size() + f] = k;
      tables[f][k].push_back(i);
    }
  std::vector<char> marked(members.size(), 0);
  const double reach = c * r;
  auto mark_around = [&](std::size_t i) {
    for (std::size_t f = 0; f < family.size(); ++f) {
      auto& bucket = tables[f][keys[i * family.size() + f]];
      // Marked points never need to be looked at again.
      std::erase_if(bucket, [&](std::size_t j) {
        if (marked[j]) return true;
        if (distance(pts, members[i], members[j]) <= reach) {
          marked[j] = 1;
          return true;
        }
        return false;
      });
    }
  };
  for (std::size_t i = 0; i < members.size(); ++i)
    if (!placed.empty() && placed[members[i]]) marked[i] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    if (!placed.empty() && placed[members[i]]) mark_around(i);
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (marked[i]) continue;
    marked[i] = 1;
    selected.push_back(members[i]);
    mark_around(i);
  }
  return selected;
}

}  // namespace detail

// (1+eps)-approximate r-net: covering within (1+eps) r always, packing >= r
// with high probability.
inline Net approx_r_net_points(const PointSet& pts, double r, double eps, std::uint64_t seed) {
  if (!(r > 0) || !(eps > 0)) throw std::invalid_argument("approx_r_net_points: r and eps must be positive");
  Rng rng(seed);
  const PointSet hashed = jl_project(pts, eps, rng());
  std::vector<std::size_t> members(pts.size());
  std::iota(members.begin(), members.end(), std::size_t{0});
  Net net;
  net.r = r;
  net.points = detail::approx_net_pass(pts, hashed, members, {}, r, 1 + eps, rng());
  net.selection_delta.assign(net.points.size(), r);
  if (!net.selection_delta.empty()) net.selection_delta[0] = kInfinity;
  return net;
}

// Approximate nearest neighbor structure: sensitive-hash tables over a
// geometric ladder of radii with ratio 1 + (c-1)/2. A query walks the ladder
// upward and returns the closest verified collision at the first rung that
// has one within rung-factor times the radius; if nothing turns up it falls
// back to a linear scan.
class AnnLadder {
 public:
  AnnLadder(const PointSet& pts, double c, double r_lo, double r_hi, std::uint64_t seed) : pts_(&pts), c_(c) {
    if (!(c > 1)) throw std::invalid_argument("AnnLadder: c must exceed 1");
    if (!(r_lo > 0) || !(r_hi >= r_lo)) throw std::invalid_argument("AnnLadder: bad radius range");
    ratio_ = 1 + (c - 1) / 2;
    rung_c_ = c / ratio_;
    Rng rng(seed);
    for (double r = r_lo;; r *= ratio_) {
      radii_.push_back(r);
      families_.push_back(HashFamily::for_points(pts.size(), pts.dim(), r, rung_c_, rng()));
      if (r >= r_hi) break;
    }
    keys_.resize(radii_.size());
    for (std::size_t l = 0; l < radii_.size(); ++l) {
      const HashFamily& fam = families_[l];
      keys_[l].resize(pts.size() * fam.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t f = 0; f < fam.size(); ++f) keys_[l][i * fam.size() + f] = fam.key(f, pts.row(i));
    }
  }

  const PointSet& points() const { return *pts_; }
  double c() const { return c_; }
  std::size_t levels() const { return radii_.size(); }
  double radius(std::size_t level) const { return radii_[level]; }
  double rung_factor() const { return rung_c_; }
  const HashFamily& family(std::size_t level) const { return families_[level]; }
  std::uint64_t key(std::size_t level, std::size_t point, std::size_t fn) const {
    return keys_[level][point * families_[level].size() + fn];
  }

 private:
  const PointSet* pts_;
  double c_;
  double ratio_ = 0;
  double rung_c_ = 0;
  std::vector<double> radii_;
  std::vector<HashFamily> families_;
  std::vector<std::vector<std::uint64_t>> keys_;
};

class AnnIndex {
 public:
  AnnIndex(const AnnLadder& ladder, std::vector<std::size_t> members) : ladder_(&ladder), members_(std::move(members)) {
    tables_.resize(ladder.levels());
    for (std::size_t l = 0; l < ladder.levels(); ++l) {
      tables_[l].resize(ladder.family(l).size());
      for (std::size_t p : members_)
        for (std::size_t f = 0; f < ladder.family(l).size(); ++f) tables_[l][f][ladder.key(l, p, f)].push_back(p);
    }
  }

  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

  // Query by a point of the underlying set (keys are precomputed).
  std::optional<std::size_t> query_member(std::size_t point) const {
    return query_impl(ladder_->points().row(point), [&](std::size_t l, std::size_t f) { return ladder_->key(l, point, f); });
  }

  std::optional<std::size_t> query(std::span<const double> q) const {
    return query_impl(q, [&](std::size_t l, std::size_t f) { return ladder_->family(l).key(f, q); });
  }

 private:
  template <typename KeyFn>
  std::optional<std::size_t> query_impl(std::span<const double> q, KeyFn key) const {
    if (members_.empty()) return std::nullopt;
    const PointSet& pts = ladder_->points();
    for (std::size_t l = 0; l < tables_.size(); ++l) {
      const double reach = ladder_->rung_factor() * ladder_->radius(l);
      std::optional<std::size_t> best;
      double best_d = kInfinity;
      for (std::size_t f = 0; f < tables_[l].size(); ++f) {
        const auto it = tables_[l][f].find(key(l, f));
        if (it == tables_[l][f].end()) continue;
        for (std::size_t p : it->second) {
          const double d = euclidean(q, pts.row(p));
          if (d <= reach && (d < best_d || (d == best_d && p < *best))) {
            best_d = d;
            best = p;
          }
        }
      }
      if (best) return best;
    }
    std::size_t best = members_.front();
    double best_d = kInfinity;
    for (std::size_t p : members_) {
      const double d = euclidean(q, pts.row(p));
      if (d < best_d) {
        best_d = d;
        best = p;
      }
    }
    return best;
  }

  const AnnLadder* ladder_;
  std::vector<std::size_t> members_;
  std::vector<std::vector<detail::Buckets>> tables_;
};

namespace detail {

inline double min_positive_pair_distance(const PointSet& pts) {
  double best = kInfinity;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = distance(pts, i, j);
      if (d > 0) best = std::min(best, d);
    }
  return best;
}

inline double far_from_first(const PointSet& pts) {
  double best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) best = std::max(best, distance(pts, 0, i));
  return best;
}

}  // namespace detail

// Owns its ladder; answers c-approximate nearest neighbor queries with high
// probability.
class AnnStructure {
 public:
  AnnStructure(const PointSet& pts, double c, std::uint64_t seed) : pts_(pts) {
    if (pts_.size() == 0) throw std::invalid_argument("ann_build: empty point set");
    double lo = detail::min_positive_pair_distance(pts_);
    double hi = 2 * detail::far_from_first(pts_);
    if (lo == kInfinity) lo = hi = 1;
    ladder_.emplace(pts_, c, lo / 2, std::max(hi, lo), seed);
    std::vector<std::size_t> all(pts_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    index_.emplace(*ladder_, std::move(all));
  }
  AnnStructure(const AnnStructure&) = delete;
  AnnStructure& operator=(const AnnStructure&) = delete;

  std::size_t query(std::span<const double> q) const { return *index_->query(q); }

 private:
  PointSet pts_;
  std::optional<AnnLadder> ladder_;
  std::optional<AnnIndex> index_;
};

inline std::unique_ptr<AnnStructure> ann_build(const PointSet& pts, double c, std::uint64_t seed) {
  return std::make_unique<AnnStructure>(pts, c, seed);
}

inline std::size_t ann_query(const AnnStructure& index, std::span<const double> q) { return index.query(q); }

struct MinMaxTree {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

// Spanning tree whose path bottlenecks are within 1+eps of the minimum
// spanning tree's (with high probability). Boruvka stages: every tree gets a
// bit identifier, one nearest-neighbor structure per (bit, value) class, each
// point asks the structures that exclude its own tree, and every tree keeps
// the shortest candidate edge touching it.
inline MinMaxTree approx_minmax_tree(const PointSet& pts, double eps, std::uint64_t seed) {
  const std::size_t n = pts.size();
  if (n < 2) throw std::invalid_argument("approx_minmax_tree: need at least two points");
  if (!(eps > 0)) throw std::invalid_argument("approx_minmax_tree: eps must be positive");
  Rng rng(seed);
  const PointSet hashed = jl_project(pts, eps, rng());
  double lo = detail::min_positive_pair_distance(pts);
  double hi = 2 * detail::far_from_first(pts);
  if (lo == kInfinity) lo = hi = 1;
  // The ladder hashes projected coordinates; candidates are ranked by exact distance.
  const AnnLadder ladder(hashed, 1 + eps, lo / 2, std::max(hi, lo) * 2, rng());

  std::vector<std::size_t> uf(n);
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  MinMaxTree tree;
  tree.n = n;
  std::size_t components = n;
  struct Candidate {
    double d = kInfinity;
    std::size_t a = kNoVertex, b = kNoVertex;
    bool operator<(const Candidate& o) const { return d != o.d ? d < o.d : (a != o.a ? a < o.a : b < o.b); }
  };
  while (components > 1) {
    std::vector<std::size_t> comp_id(n, kNoVertex);
    std::vector<std::size_t> roots;
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t root = find(p);
      if (comp_id[root] == kNoVertex) {
        comp_id[root] = roots.size();
        roots.push_back(root);
      }
    }
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < components) ++bits;
    std::vector<Candidate> best(components);
    for (std::size_t bit = 0; bit < bits; ++bit)
      for (std::size_t value = 0; value < 2; ++value) {
        std::vector<std::size_t> members;
        for (std::size_t p = 0; p < n; ++p)
          if (((comp_id[find(p)] >> bit) & 1) == value) members.push_back(p);
        if (members.empty()) continue;
        const AnnIndex index(ladder, std::move(members));
        for (std::size_t p = 0; p < n; ++p) {
          const std::size_t cp = comp_id[find(p)];
          if (((cp >> bit) & 1) == value) continue;
          const std::size_t q = *index.query_member(p);
          const Candidate cand{distance(pts, p, q), std::min(p, q), std::max(p, q)};
          const std::size_t cq = comp_id[find(q)];
          if (cand < best[cp]) best[cp] = cand;
          if (cand < best[cq]) best[cq] = cand;
        }
      }
    std::sort(best.begin(), best.end());
    for (const Candidate& cand : best) {
      if (cand.a == kNoVertex) continue;
      const std::size_t ra = find(cand.a), rb = find(cand.b);
      if (ra == rb) continue;
      uf[ra] = rb;
      tree.edges.push_back(Edge{cand.a, cand.b, cand.d});
      --components;
    }
  }
  return tree;
}

namespace detail {

inline GreedyPermutation trivial_point_permutation(double eps) {
  GreedyPermutation perm;
  perm.eps = eps;
  perm.order = {0};
  perm.radii = {kInfinity};
  return perm;
}

inline void check_greedy_points_input(const PointSet& pts, double eps, const char* who) {
  if (!(eps > 0)) throw std::invalid_argument(std::string(who) + ": eps must be positive");
  if (has_duplicate_points(pts)) throw std::invalid_argument(std::string(who) + ": duplicate points");
}

}  // namespace detail

// (1+eps)-greedy permutation for points, with high probability, by running
// approximate nets at radii Delta / (1+e)^i with e = eps/3 (the net slack
// and the level ratio together stay within 1+eps).
inline GreedyPermutation approx_greedy_points_bounded_spread(const PointSet& pts, double eps, std::uint64_t seed,
                                                             GreedyStats* stats = nullptr) {
  detail::check_greedy_points_input(pts, eps, "approx_greedy_points_bounded_spread");
  const std::size_t n = pts.size();
  if (n == 1) return detail::trivial_point_permutation(eps);
  const double e = eps / 3;
  Rng rng(seed);
  const PointSet hashed = jl_project(pts, e, rng());
  const double diameter = 2 * detail::far_from_first(pts);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  GreedyPermutation perm;
  perm.eps = eps;
  std::vector<char> placed(n, 0);
  for (std::size_t level = 0; perm.order.size() < n; ++level) {
    const double r = diameter / std::pow(1 + e, static_cast<double>(level));
    for (std::size_t p : detail::approx_net_pass(pts, hashed, all, placed, r, 1 + e, rng())) {
      placed[p] = 1;
      perm.order.push_back(p);
      perm.radii.push_back(perm.order.size() == 1 ? kInfinity : r);
    }
    if (stats) {
      ++stats->levels_processed;
      stats->processed_levels.push_back(level);
    }
  }
  return perm;
}

// Spread-free variant: subproblems are the components of the approximate
// min-max tree after deleting edges longer than (1+3e) r; an edge's
// endpoints take part once r < 2n*len/e; placed points stay active so they
// keep blocking their neighborhoods. Runs internally at e = eps/4.
inline GreedyPermutation approx_greedy_points(const PointSet& pts, double eps, std::uint64_t seed, GreedyStats* stats = nullptr) {
  detail::check_greedy_points_input(pts, eps, "approx_greedy_points");
  const std::size_t n = pts.size();
  if (n == 1) return detail::trivial_point_permutation(eps);
  const double e = eps / 4;
  const double nd = static_cast<double>(n);
  Rng rng(seed);
  const PointSet hashed = jl_project(pts, e, rng());
  const MinMaxTree tree = approx_minmax_tree(pts, e, rng());
  const double diameter = 2 * detail::far_from_first(pts);
  auto radius = [&](std::size_t level) { return diameter / std::pow(1 + e, static_cast<double>(level)); };
  const double log_ratio = std::log1p(e);
  auto first_level = [&](auto pred, double guess) {
    std::size_t i = guess > 0 ? static_cast<std::size_t>(guess) : 0;
    while (i > 0 && pred(radius(i - 1))) --i;
    while (!pred(radius(i))) ++i;
    return i;
  };

  struct Event {
    std::size_t level;
    bool activate;
    std::size_t edge;
  };
  std::vector<Event> events;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    const Edge& te = tree.edges[i];
    adj[te.u].push_back({te.v, i});
    adj[te.v].push_back({te.u, i});
    const double len = te.w;
    events.push_back(Event{first_level([&](double r) { return r < 2 * nd * len / e; }, std::log(diameter * e / (2 * nd * len)) / log_ratio), true, i});
    events.push_back(Event{first_level([&](double r) { return r < len / (1 + 3 * e); }, std::log(diameter * (1 + 3 * e) / len) / log_ratio), false, i});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.level != b.level ? a.level < b.level : (a.activate != b.activate ? a.activate : a.edge < b.edge);
  });

  GreedyPermutation perm;
  perm.eps = eps;
  std::vector<char> active(n, 0), placed(n, 0), deleted(tree.edges.size(), 0);
  std::size_t active_unplaced = 0;
  auto activate = [&](std::size_t p) {
    if (active[p]) return;
    active[p] = 1;
    if (!placed[p]) ++active_unplaced;
  };
  activate(0);

  std::vector<std::size_t> visit_stamp(n, 0);
  std::size_t stamp = 0;
  std::vector<std::size_t> stack, members;
  std::size_t next_event = 0;
  std::size_t level = 0;
  while (perm.order.size() < n) {
    for (; next_event < events.size() && events[next_event].level <= level; ++next_event) {
      const Event& ev = events[next_event];
      if (ev.activate) {
        activate(tree.edges[ev.edge].u);
        activate(tree.edges[ev.edge].v);
      } else {
        deleted[ev.edge] = 1;
      }
    }
    if (active_unplaced == 0) {
      if (next_event == events.size()) break;
      if (stats) stats->levels_skipped += events[next_event].level - level;
      level = events[next_event].level;
      continue;
    }
    const double r = radius(level);
    ++stamp;
    for (std::size_t start = 0; start < n; ++start) {
      if (!active[start] || placed[start] || visit_stamp[start] == stamp) continue;
      members.clear();
      stack.assign(1, start);
      visit_stamp[start] = stamp;
      while (!stack.empty()) {
        const std::size_t p = stack.back();
        stack.pop_back();
        if (active[p]) members.push_back(p);
        for (auto [q, edge] : adj[p])
          if (!deleted[edge] && visit_stamp[q] != stamp) {
            visit_stamp[q] = stamp;
            stack.push_back(q);
          }
      }
      std::sort(members.begin(), members.end());
      for (std::size_t p : detail::approx_net_pass(pts, hashed, members, placed, r, 1 + e, rng())) {
        placed[p] = 1;
        --active_unplaced;
        perm.order.push_back(p);
        perm.radii.push_back(perm.order.size() == 1 ? kInfinity : r);
      }
    }
    if (stats) {
      ++stats->levels_processed;
      stats->processed_levels.push_back(level);
    }
    ++level;
  }
  return perm;
}

}  // namespace gperm
