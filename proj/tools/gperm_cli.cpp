// gperm: greedy permutations, nets, k-center and distance counting from the
// command line. Results go to stdout (or -o), summaries to stderr.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gperm/euclid.hpp"
#include "gperm/generators.hpp"
#include "gperm/graph.hpp"
#include "gperm/greedy.hpp"
#include "gperm/oracle.hpp"
#include "gperm/planar.hpp"
#include "gperm/treewidth.hpp"

namespace {

using namespace gperm;

constexpr std::uint64_t kDefaultSeed = 0x67706572;

struct RunConfig {
  std::string graph_path;
  std::string points_path;
  std::string td_path;
  std::string format = "auto";
  std::string output;
  bool exact = false;
  bool bounded_spread = false;
  bool planar = false;
  bool greedy_prefix = false;
  bool verify = false;
  Vertex first = 0;
  double eps = 0.5;
  double r = 0;
  std::uint64_t k = 0;
  std::uint64_t seed = kDefaultSeed;
  std::size_t threads = 1;
  // bench
  std::vector<std::size_t> sizes{2500, 5000, 10000};
  std::vector<std::string> algorithms{"approx", "exact"};
  int repeats = 1;
};

// Input problems: reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

Graph load_graph(const RunConfig& cfg) {
  auto in = open_input(cfg.graph_path);
  const GraphFormat fmt = cfg.format == "gr" ? GraphFormat::Dimacs : cfg.format == "edgelist" ? GraphFormat::EdgeList : GraphFormat::Auto;
  try {
    return parse_graph(in, fmt);
  } catch (const ParseError& e) {
    throw UsageError(cfg.graph_path + ": " + e.what());
  }
}

PointSet load_points(const RunConfig& cfg) {
  auto in = open_input(cfg.points_path);
  try {
    return parse_points(in);
  } catch (const ParseError& e) {
    throw UsageError(cfg.points_path + ": " + e.what());
  }
}

oracle::DistanceMatrix matrix_of(const PointSet& pts) { return oracle::euclidean_matrix(pts.coords(), pts.size(), pts.dim()); }

template <typename Fn>
void emit(const RunConfig& cfg, Fn&& write) {
  if (cfg.output.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw UsageError("cannot write " + cfg.output);
  write(out);
}

void require_one_input(const RunConfig& cfg) {
  if (cfg.graph_path.empty() == cfg.points_path.empty()) throw UsageError("give exactly one of --graph or --points");
}

int report(const oracle::Verdict& v, double eps) {
  if (!v.pass) {
    std::cerr << "verify: FAIL (" << v.witness << ")\n";
    return 1;
  }
  std::cerr << "verify: pass eps=" << eps;
  if (!v.certificate.empty()) {
    std::cerr << " certificate";
    for (Weight r : v.certificate) std::cerr << ' ' << r;
  }
  std::cerr << '\n';
  return 0;
}

int cmd_greedy(const RunConfig& cfg) {
  require_one_input(cfg);
  GreedyPermutation perm;
  std::optional<oracle::DistanceMatrix> dm;
  if (!cfg.points_path.empty()) {
    const PointSet pts = load_points(cfg);
    perm = cfg.bounded_spread ? approx_greedy_points_bounded_spread(pts, cfg.eps, cfg.seed) : approx_greedy_points(pts, cfg.eps, cfg.seed);
    if (cfg.verify) dm = matrix_of(pts);
  } else {
    const Graph g = load_graph(cfg);
    if (!cfg.td_path.empty()) {
      auto in = open_input(cfg.td_path);
      const TreeDecomposition td = parse_tree_decomposition(in, g);
      perm = exact_greedy_treewidth(g, td);
    } else if (cfg.exact) {
      perm = exact_greedy(g, cfg.first);
    } else {
      perm = cfg.bounded_spread ? approx_greedy_bounded_spread(g, cfg.eps, cfg.seed) : approx_greedy(g, cfg.eps, cfg.seed);
    }
    if (cfg.verify) dm = oracle::apsp_exact(g);
  }
  emit(cfg, [&](std::ostream& out) { write_permutation(out, perm); });
  std::cerr << "greedy: " << perm.size() << " points, eps " << perm.eps << '\n';
  return dm ? report(oracle::verify_eps_greedy(*dm, perm, perm.eps), perm.eps) : 0;
}

int cmd_net(const RunConfig& cfg) {
  require_one_input(cfg);
  if (!(cfg.r > 0)) throw UsageError("net needs -r > 0");
  Net net;
  std::optional<oracle::DistanceMatrix> dm;
  double cover = 1;
  if (!cfg.points_path.empty()) {
    const PointSet pts = load_points(cfg);
    net = approx_r_net_points(pts, cfg.r, cfg.eps, cfg.seed);
    cover = 1 + cfg.eps;
    if (cfg.verify) dm = matrix_of(pts);
  } else {
    const Graph g = load_graph(cfg);
    net = r_net(g, cfg.r, cfg.seed);
    if (cfg.verify) dm = oracle::apsp_exact(g);
  }
  emit(cfg, [&](std::ostream& out) { write_net(out, net); });
  std::cerr << "net: " << net.points.size() << " points at r " << cfg.r << '\n';
  return dm ? report(oracle::verify_net(*dm, net.points, cfg.r, cover), 0) : 0;
}

int cmd_kcenter(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw UsageError("kcenter needs --graph");
  const Graph g = load_graph(cfg);
  std::vector<Vertex> centers;
  Weight radius = 0;
  if (cfg.greedy_prefix || !g.has_integer_weights()) {
    // Prefix of an approximate greedy permutation; works for any weights.
    const auto perm = approx_greedy(g, cfg.eps, cfg.seed);
    const auto pc = prefix_k_center(perm, cfg.k);
    centers = pc.centers;
    radius = pc.radius_bound;
    std::cerr << "kcenter: greedy prefix, radius bound " << radius << '\n';
  } else {
    const auto res = k_center_integer(g, cfg.k, cfg.seed);
    centers = res.centers;
    radius = res.radius;
  }
  emit(cfg, [&](std::ostream& out) {
    const auto old = out.precision(17);
    out << "radius " << radius << '\n';
    for (Vertex c : centers) out << c << '\n';
    out.precision(old);
  });
  if (cfg.verify) {
    const auto dm = oracle::apsp_exact(g);
    const Weight actual = oracle::covering_radius(dm, centers);
    if (!oracle::leq(actual, radius)) {
      std::cerr << "verify: FAIL (covering radius " << actual << " exceeds " << radius << ")\n";
      return 1;
    }
    std::cerr << "verify: pass covering radius " << actual << '\n';
  }
  return 0;
}

int cmd_count(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw UsageError("count needs --graph");
  if (!(cfg.r > 0)) throw UsageError("count needs -r > 0");
  const Graph g = load_graph(cfg);
  std::uint64_t count = 0;
  if (cfg.planar) {
    count = count_short_pairs(g, build_hd(g), cfg.r, cfg.eps, exact_oracle(g), cfg.threads);
    std::cerr << "count: pairs within " << cfg.r << " <= count <= pairs within " << (3 + cfg.eps) * cfg.r << '\n';
  } else {
    count = oracle::exact_count(oracle::apsp_exact(g), cfg.r);
  }
  emit(cfg, [&](std::ostream& out) { out << count << '\n'; });
  return 0;
}

int cmd_select(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw UsageError("select needs --graph");
  if (cfg.k < 1) throw UsageError("select needs -k >= 1");
  const Graph g = load_graph(cfg);
  if (!cfg.planar) {
    const Weight d = oracle::exact_select(oracle::apsp_exact(g), cfg.k);
    emit(cfg, [&](std::ostream& out) { out << std::setprecision(17) << d << '\n'; });
    return 0;
  }
  const auto res = select_kth_distance(g, build_hd(g), cfg.k, cfg.eps, exact_oracle(g), cfg.threads);
  emit(cfg, [&](std::ostream& out) { out << std::setprecision(17) << res.alpha << '\n'; });
  std::cerr << "select: d_(" << cfg.k << ") in [" << res.alpha << ", " << res.factor * res.alpha << "]\n";
  return 0;
}

// Wall-time of the graph greedy algorithms on square-ish grids with random
// integer weights.
int cmd_bench(const RunConfig& cfg) {
  emit(cfg, [&](std::ostream& out) {
    out << "n,m,algorithm,seed,millis\n";
    for (std::size_t n : cfg.sizes) {
      const auto rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
      const Graph g = gen::grid_graph(rows, (n + rows - 1) / rows, gen::WeightRange{1, 100, true}, cfg.seed);
      for (const std::string& algo : cfg.algorithms)
        for (int rep = 0; rep < cfg.repeats; ++rep) {
          const auto start = std::chrono::steady_clock::now();
          if (algo == "exact") exact_greedy(g, 0);
          else if (algo == "approx") approx_greedy(g, cfg.eps, cfg.seed + rep);
          else if (algo == "bounded") approx_greedy_bounded_spread(g, cfg.eps, cfg.seed + rep);
          else if (algo == "net") r_net(g, 50, cfg.seed + rep);
          else throw UsageError("unknown bench algorithm " + algo);
          const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
          out << g.size() << ',' << g.num_edges() << ',' << algo << ',' << cfg.seed + rep << ',' << ms.count() << '\n';
        }
    }
  });
  return 0;
}

void add_input(CLI::App* sub, RunConfig& cfg, bool points) {
  sub->add_option("--graph", cfg.graph_path, "graph file (DIMACS .gr or edge list)");
  if (points) sub->add_option("--points", cfg.points_path, "point file: 'n d' header then n rows");
  sub->add_option("--format", cfg.format, "graph format")->check(CLI::IsMember({"auto", "gr", "edgelist"}));
  sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
  sub->add_option("--seed", cfg.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy permutations, nets, k-center and approximate distance counting"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto positive = CLI::PositiveNumber;

  auto* greedy = app.add_subcommand("greedy", "greedy permutation");
  add_input(greedy, cfg, true);
  greedy->add_option("--td", cfg.td_path, "tree decomposition file (exact treewidth algorithm)");
  greedy->add_flag("--exact", cfg.exact, "exact farthest-first traversal");
  greedy->add_option("--first", cfg.first, "start vertex for --exact");
  greedy->add_option("--eps", cfg.eps, "approximation parameter")->check(positive);
  greedy->add_flag("--bounded-spread", cfg.bounded_spread, "use the level-by-level algorithm for bounded spread");
  greedy->add_flag("--verify", cfg.verify, "check the result against the brute-force verifier");

  auto* net = app.add_subcommand("net", "r-net");
  add_input(net, cfg, true);
  net->add_option("-r", cfg.r, "radius")->required()->check(positive);
  net->add_option("--eps", cfg.eps, "covering slack for point sets")->check(positive);
  net->add_flag("--verify", cfg.verify, "check packing and covering");

  auto* kcenter = app.add_subcommand("kcenter", "approximate k-center");
  add_input(kcenter, cfg, false);
  kcenter->add_option("-k", cfg.k, "number of centers")->required()->check(positive);
  kcenter->add_option("--eps", cfg.eps, "eps for the greedy-prefix method")->check(positive);
  kcenter->add_flag("--greedy-prefix", cfg.greedy_prefix, "use a prefix of an approximate greedy permutation");
  kcenter->add_flag("--verify", cfg.verify, "check the covering radius");

  auto* count = app.add_subcommand("count", "count pairs at distance at most r");
  add_input(count, cfg, false);
  count->add_option("-r", cfg.r, "radius")->required()->check(positive);
  count->add_option("--eps", cfg.eps, "approximation parameter")->check(positive);
  count->add_flag("--planar", cfg.planar, "approximate planar counting (otherwise exact all-pairs)");
  count->add_option("--threads", cfg.threads, "worker threads")->check(positive);

  auto* select = app.add_subcommand("select", "k-th smallest pairwise distance");
  add_input(select, cfg, false);
  select->add_option("-k", cfg.k, "rank (1-based)")->required()->check(positive);
  select->add_option("--eps", cfg.eps, "approximation parameter")->check(positive);
  select->add_flag("--planar", cfg.planar, "approximate planar selection (otherwise exact all-pairs)");
  select->add_option("--threads", cfg.threads, "worker threads")->check(positive);

  auto* bench = app.add_subcommand("bench", "scaling benchmark on grid graphs, CSV output");
  bench->add_option("--sizes", cfg.sizes, "vertex counts")->delimiter(',');
  bench->add_option("--algorithms", cfg.algorithms, "exact, approx, bounded, net")->delimiter(',');
  bench->add_option("--eps", cfg.eps, "approximation parameter")->check(positive);
  bench->add_option("--repeats", cfg.repeats, "runs per size and algorithm")->check(positive);
  bench->add_option("--seed", cfg.seed, "random seed");
  bench->add_option("-o,--output", cfg.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*greedy) return cmd_greedy(cfg);
    if (*net) return cmd_net(cfg);
    if (*kcenter) return cmd_kcenter(cfg);
    if (*count) return cmd_count(cfg);
    if (*select) return cmd_select(cfg);
    return cmd_bench(cfg);
  } catch (const std::exception& e) {
    std::cerr << "gperm: " << e.what() << '\n';
    return 2;
  }
}
