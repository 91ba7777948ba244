#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gperm/euclid.hpp"
#include "gperm/generators.hpp"
#include "gperm/graph.hpp"
#include "gperm/oracle.hpp"

using namespace gperm;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(GPERM_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gperm_cli_" + std::to_string(::getpid()) + "_" +
                                         ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string graph_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace

TEST_F(Cli, ExactGreedyOnPath) {
  const auto g = file("path4.gr", "4 3\n0 1 1\n1 2 1\n2 3 1\n");
  const CliResult r = run("greedy --graph " + g + " --exact --first 0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0 0 inf\n1 3 3\n2 1 1\n3 2 1\n");
}

TEST_F(Cli, ApproxGreedyVerifies) {
  const auto g = file("g.txt", graph_text(gen::random_connected_graph(60, 150, gen::WeightRange{1, 40, true}, 3)));
  EXPECT_EQ(run("greedy --graph " + g + " --eps 0.5 --seed 4 --verify").code, 0);
  EXPECT_EQ(run("greedy --graph " + g + " --eps 0.5 --bounded-spread --verify").code, 0);
}

TEST_F(Cli, PointGreedyVerifies) {
  std::ostringstream pts;
  write_points(pts, gen::random_points(40, 5, 2));
  const auto p = file("pts.xy", pts.str());
  EXPECT_EQ(run("greedy --points " + p + " --eps 0.5 --seed 1 --verify").code, 0);
}

TEST_F(Cli, TreewidthGreedyMatchesExact) {
  const auto dg = gen::partial_k_tree(40, 2, 0.7, gen::WeightRange{1, 9, true}, 5);
  const auto g = file("g.txt", graph_text(dg.graph));
  std::ostringstream td;
  write_tree_decomposition(td, dg.td);
  const auto t = file("g.td", td.str());
  const CliResult a = run("greedy --graph " + g + " --td " + t + " --verify");
  const CliResult b = run("greedy --graph " + g + " --exact --first 0");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, SameSeedSameBytes) {
  const auto g = file("g.txt", graph_text(gen::random_connected_graph(80, 200, gen::WeightRange{1, 100, false}, 6)));
  ASSERT_EQ(run("greedy --graph " + g + " --eps 0.3 --seed 9 -o " + path("a.out")).code, 0);
  ASSERT_EQ(run("greedy --graph " + g + " --eps 0.3 --seed 9 -o " + path("b.out")).code, 0);
  std::ifstream a(path("a.out")), b(path("b.out"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_FALSE(sa.str().empty());
  EXPECT_EQ(sa.str(), sb.str());
}

TEST_F(Cli, NetAndKCenter) {
  const auto g = file("path5.gr", "5 4\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n");
  EXPECT_EQ(run("net --graph " + g + " -r 1.5 --verify").code, 0);
  const CliResult k = run("kcenter --graph " + g + " -k 2 --seed 7 --verify");
  ASSERT_EQ(k.code, 0);
  std::istringstream in(k.out);
  std::string word;
  double radius = 0;
  in >> word >> radius;
  EXPECT_EQ(word, "radius");
  EXPECT_LE(radius, 2.0);
}

TEST_F(Cli, CountAndSelect) {
  const auto k3 = file("k3.gr", "3 3\n0 1 1\n1 2 1\n0 2 1\n");
  const CliResult c = run("count --graph " + k3 + " --planar -r 1 --eps 0.1");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "3\n");
  const auto p4 = file("path4.gr", "4 3\n0 1 1\n1 2 1\n2 3 1\n");
  const CliResult s = run("select --graph " + p4 + " --planar -k 4 --eps 0.1");
  ASSERT_EQ(s.code, 0);
  const double alpha = std::stod(s.out);
  EXPECT_LE(alpha, 2.0);
  EXPECT_LE(2.0, 3.1 * 1.1 * alpha * (1 + 1e-12));
}

TEST_F(Cli, BenchWritesCsv) {
  const CliResult r = run("bench --sizes 100,400 --algorithms approx,exact");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,m,algorithm,seed,millis");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST_F(Cli, ErrorsExitTwo) {
  EXPECT_EQ(run("greedy --graph " + path("missing.gr")).code, 2);
  EXPECT_EQ(run("greedy --graph " + file("bad.gr", "2 1\n0 1 -3\n")).code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("net --graph " + file("a.gr", "2 1\n0 1 1\n")).code, 2);  // missing -r
  EXPECT_EQ(run("frobnicate").code, 2);
}
