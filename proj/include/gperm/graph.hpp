// Weighted undirected graphs and the shortest-path primitives shared by every
// graph-facing algorithm in the library.
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gperm {

using Vertex = std::size_t;
using Weight = double;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 0;
};

// One direction of an undirected edge as stored in the adjacency arrays.
struct Arc {
  Vertex to = 0;
  Weight w = 0;
  std::size_t edge = 0;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Immutable after construction; adjacency is kept in CSR form.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0) throw GraphError("graph must have at least one vertex");
    std::vector<std::size_t> degree(n_, 0);
    for (const Edge& e : edges_) {
      if (e.u >= n_ || e.v >= n_) throw GraphError("edge endpoint out of range");
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      if (!(e.w >= 0) || e.w == kInfinity) throw GraphError("edge weight must be finite and non-negative");
      ++degree[e.u];
      ++degree[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (Vertex v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    arcs_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      arcs_[fill[e.u]++] = Arc{e.v, e.w, i};
      arcs_[fill[e.v]++] = Arc{e.u, e.w, i};
    }
  }

  std::size_t size() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  std::span<const Arc> neighbors(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

  // +inf when there is no positive-weight edge.
  Weight min_positive_weight() const {
    Weight best = kInfinity;
    for (const Edge& e : edges_)
      if (e.w > 0) best = std::min(best, e.w);
    return best;
  }

  Weight max_weight() const {
    Weight best = 0;
    for (const Edge& e : edges_) best = std::max(best, e.w);
    return best;
  }

  bool has_integer_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == static_cast<double>(static_cast<long long>(e.w)); });
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

// Shortest-path distances from a declared source set; +inf means unreached.
struct DistanceField {
  std::vector<Weight> delta;
  std::vector<Vertex> parent;

  DistanceField() = default;
  explicit DistanceField(std::size_t n) : delta(n, kInfinity), parent(n, kNoVertex) {}

  std::size_t size() const { return delta.size(); }
  Weight operator[](Vertex v) const { return delta[v]; }
};

struct Source {
  Vertex v = 0;
  Weight offset = 0;
};

namespace detail {

using HeapEntry = std::pair<Weight, Vertex>;
// Min-heap on (distance, vertex id): equal distances pop the smaller id first.
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

inline void check_vertex(const Graph& g, Vertex v) {
  if (v >= g.size()) throw GraphError("vertex id " + std::to_string(v) + " out of range");
}

}  // namespace detail

// Multi-source Dijkstra with per-source offsets. Vertices whose distance
// would be >= limit are left at +inf.
inline DistanceField dijkstra(const Graph& g, std::span<const Source> sources, Weight limit = kInfinity) {
  if (sources.empty()) throw GraphError("dijkstra: empty source set");
  DistanceField field(g.size());
  detail::MinHeap heap;
  for (const Source& s : sources) {
    detail::check_vertex(g, s.v);
    if (!(s.offset >= 0)) throw GraphError("dijkstra: negative source offset");
    if (s.offset < field.delta[s.v] && s.offset < limit) {
      field.delta[s.v] = s.offset;
      field.parent[s.v] = kNoVertex;
      heap.emplace(s.offset, s.v);
    }
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > field.delta[u]) continue;
    for (const Arc& a : g.neighbors(u)) {
      const Weight nd = d + a.w;
      if (nd < field.delta[a.to] && nd < limit) {
        field.delta[a.to] = nd;
        field.parent[a.to] = u;
        heap.emplace(nd, a.to);
      }
    }
  }
  return field;
}

inline DistanceField dijkstra(const Graph& g, Vertex source) {
  const Source s{source, 0};
  return dijkstra(g, std::span<const Source>(&s, 1));
}

// Dijkstra from `source` that only admits a vertex into the heap when its
// tentative distance beats the current field value. Afterwards the field is
// the pointwise minimum of its prior contents and the distances from source.
// Returns the number of strict decreases of field entries.
inline std::size_t pruned_dijkstra_relax(const Graph& g, Vertex source, DistanceField& field) {
  detail::check_vertex(g, source);
  if (field.size() != g.size()) throw GraphError("pruned_dijkstra_relax: field size mismatch");
  if (field.parent.size() != field.delta.size()) field.parent.assign(field.delta.size(), kNoVertex);
  std::size_t decreases = 0;
  if (field.delta[source] > 0) {
    field.delta[source] = 0;
    field.parent[source] = kNoVertex;
    ++decreases;
  }
  detail::MinHeap heap;
  heap.emplace(0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > field.delta[u]) continue;
    for (const Arc& a : g.neighbors(u)) {
      const Weight nd = d + a.w;
      if (nd < field.delta[a.to]) {
        field.delta[a.to] = nd;
        field.parent[a.to] = u;
        heap.emplace(nd, a.to);
        ++decreases;
      }
    }
  }
  return decreases;
}

inline bool is_connected(const Graph& g) {
  const DistanceField f = dijkstra(g, 0);
  return std::none_of(f.delta.begin(), f.delta.end(), [](Weight d) { return d == kInfinity; });
}

inline void require_connected(const Graph& g, const char* who) {
  if (!is_connected(g)) throw GraphError(std::string(who) + ": graph is disconnected");
}

// Twice the eccentricity of vertex 0; lies in [diam, 2 diam].
inline Weight approx_diameter(const Graph& g) {
  const DistanceField f = dijkstra(g, 0);
  Weight ecc = 0;
  for (Weight d : f.delta) {
    if (d == kInfinity) throw GraphError("approx_diameter: graph is disconnected");
    ecc = std::max(ecc, d);
  }
  return 2 * ecc;
}

struct SpreadEstimate {
  Weight phi = 0;
  // Zero-weight edges are ignored when taking the minimum edge length.
  std::size_t zero_weight_edges = 0;
};

// Upper bound on the spread within a factor of 2: approx diameter divided by
// the minimum positive edge weight.
inline SpreadEstimate spread(const Graph& g) {
  if (g.size() < 2) throw GraphError("spread: need at least two vertices");
  SpreadEstimate out;
  for (const Edge& e : g.edges())
    if (e.w == 0) ++out.zero_weight_edges;
  const Weight wmin = g.min_positive_weight();
  if (wmin == kInfinity) throw GraphError("spread: all edges have zero weight");
  out.phi = approx_diameter(g) / wmin;
  return out;
}

enum class GraphFormat { Auto, EdgeList, Dimacs };

namespace detail {

inline bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return true;
  }
  return false;
}

template <typename T>
T read_field(std::istringstream& ss, std::size_t lineno, const char* what) {
  T value{};
  if (!(ss >> value)) throw ParseError(lineno, std::string("expected ") + what);
  return value;
}

inline Weight read_weight(std::istringstream& ss, std::size_t lineno) {
  std::string tok;
  if (!(ss >> tok)) throw ParseError(lineno, "expected edge weight");
  std::size_t used = 0;
  double w = 0;
  try {
    w = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(lineno, "malformed weight '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError(lineno, "malformed weight '" + tok + "'");
  if (w < 0) throw ParseError(lineno, "negative weight");
  if (!(w < kInfinity)) throw ParseError(lineno, "weight must be finite");
  return w;
}

inline void expect_end(std::istringstream& ss, std::size_t lineno) {
  std::string extra;
  if (ss >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
}

inline Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(lineno, "missing header 'n m'");
  std::istringstream header(line);
  const auto n = read_field<long long>(header, lineno, "vertex count");
  const auto m = read_field<long long>(header, lineno, "edge count");
  expect_end(header, lineno);
  if (n < 1) throw ParseError(lineno, "vertex count must be >= 1");
  if (m < 0) throw ParseError(lineno, "edge count must be >= 0");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, lineno)) throw ParseError(lineno, "expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    std::istringstream ss(line);
    const auto u = read_field<long long>(ss, lineno, "vertex id");
    const auto v = read_field<long long>(ss, lineno, "vertex id");
    const Weight w = read_weight(ss, lineno);
    expect_end(ss, lineno);
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(lineno, "vertex id out of range [0, " + std::to_string(n) + ")");
    if (u == v) throw ParseError(lineno, "self-loop");
    edges.push_back(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v), w});
  }
  if (next_content_line(in, line, lineno)) throw ParseError(lineno, "more edges than declared");
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

// DIMACS shortest-path format: 'c' comments, 'p sp n m', 'a u v w' arcs with
// 1-based ids. Arcs in both directions collapse to one undirected edge.
inline Graph parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1;
  std::map<std::pair<Vertex, Vertex>, Weight> merged;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag == "c") continue;
    if (tag == "p") {
      const auto kind = read_field<std::string>(ss, lineno, "problem kind");
      if (kind != "sp") throw ParseError(lineno, "unsupported problem kind '" + kind + "'");
      n = read_field<long long>(ss, lineno, "vertex count");
      read_field<long long>(ss, lineno, "arc count");
      if (n < 1) throw ParseError(lineno, "vertex count must be >= 1");
    } else if (tag == "a") {
      if (n < 0) throw ParseError(lineno, "arc before problem line");
      const auto u = read_field<long long>(ss, lineno, "vertex id");
      const auto v = read_field<long long>(ss, lineno, "vertex id");
      const Weight w = read_weight(ss, lineno);
      if (u < 1 || v < 1 || u > n || v > n) throw ParseError(lineno, "vertex id out of range [1, " + std::to_string(n) + "]");
      if (u == v) throw ParseError(lineno, "self-loop");
      const auto a = static_cast<Vertex>(u - 1), b = static_cast<Vertex>(v - 1);
      const std::pair<Vertex, Vertex> key{std::min(a, b), std::max(a, b)};
      auto [it, fresh] = merged.emplace(key, w);
      if (!fresh) it->second = std::min(it->second, w);
    } else {
      throw ParseError(lineno, "unknown line tag '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError(lineno, "missing problem line");
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, w] : merged) edges.push_back(Edge{key.first, key.second, w});
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

}  // namespace detail

inline Graph parse_graph(std::istream& in, GraphFormat format = GraphFormat::Auto) {
  if (format == GraphFormat::Auto) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto pos = text.find_first_not_of(" \t\r\n");
    const bool dimacs = pos != std::string::npos && (text[pos] == 'c' || text[pos] == 'p');
    std::istringstream ss(text);
    return dimacs ? detail::parse_dimacs(ss) : detail::parse_edge_list(ss);
  }
  return format == GraphFormat::Dimacs ? detail::parse_dimacs(in) : detail::parse_edge_list(in);
}

inline Graph parse_graph(const std::string& text, GraphFormat format = GraphFormat::Auto) {
  std::istringstream ss(text);
  return parse_graph(ss, format);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.num_edges() << '\n';
  const auto old = out.precision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  out.precision(old);
}

}  // namespace gperm
