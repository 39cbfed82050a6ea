#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "gconn/generators.hpp"
#include "gconn/graph.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(GCONN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("gconn_cli_" + std::to_string(::getpid()) + "_" +
           testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }

  fs::path dir;
};

}  // namespace

TEST_F(CliTest, GenIsDeterministicAndLoadable) {
  ASSERT_EQ(cli("--seed 1 gen rmat --scale 10 --ef 8 --out " + path("a.txt")).code, 0);
  ASSERT_EQ(cli("--seed 1 gen rmat --scale 10 --ef 8 --out " + path("b.txt")).code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  const auto el = gconn::load_edge_list(path("a.txt"));
  EXPECT_EQ(el.edges.size(), 8u * 1024);
  EXPECT_EQ(el.edges, gconn::gen_rmat({10, 8, 0.5, 0.1, 0.1, 1}).edges);
  EXPECT_EQ(cli("static " + path("a.txt") + " --spec kout+async+halve").code, 0);
  ASSERT_EQ(cli("--seed 2 gen ba --n 500 --attach 3 --binary --out " + path("ba.bin")).code, 0);
  EXPECT_NE(cli("validate " + path("ba.bin")).out.find("components: 1"), std::string::npos);
}

TEST_F(CliTest, BadGeneratorParameters) {
  EXPECT_NE(cli("gen ba --n 3 --attach 5 --out " + path("x.txt")).code, 0);
  EXPECT_NE(cli("gen rmat --scale 4 --a 0.9 --b 0.2 --out " + path("x.txt")).code, 0);
}

TEST_F(CliTest, StaticTwoEdges) {
  const auto g = write("g.txt", "0 1\n2 3\n");
  const auto r = cli("static " + g + " --sample kout --finish async --find halve");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("components: 2"), std::string::npos);
  EXPECT_NE(cli("validate " + g).out.find("components: 2"), std::string::npos);
}

TEST_F(CliTest, InvalidCombination) {
  const auto g = write("g.txt", "0 1\n");
  EXPECT_EQ(cli("static " + g + " --finish rem_lock --find compress --splice splice").code, 1);
  EXPECT_EQ(cli("static " + g + " --spec none+nosuch").code, 1);
  EXPECT_NE(cli("static " + write("bad.txt", "0 x\n")).code, 0);
}

TEST_F(CliTest, ForestTriangle) {
  const auto g = write("tri.txt", "0 1\n1 2\n2 0\n");
  const auto r = cli("forest " + g + " --spec hb+prs --out " + path("f.txt"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("forest_edges: 2"), std::string::npos);
  EXPECT_NE(r.out.find("verified: yes"), std::string::npos);
  EXPECT_EQ(cli("forest " + g + " --spec none+lp").code, 1);
}

TEST_F(CliTest, IncrementalInsertThenQuery) {
  const auto s = write("ops.txt", "i 0 1\nq 0 1\n");
  const auto r = cli("incremental --stream " + s + " --finish sv --verify");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0,2,1,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("verified: yes"), std::string::npos);
}

TEST_F(CliTest, IncrementalFromGraph) {
  ASSERT_EQ(cli("gen rmat --scale 9 --ef 4 --out " + path("g.txt")).code, 0);
  const auto r = cli("incremental --from-graph " + path("g.txt") + " --batch-size 500 --ratio 2 --verify --spec none+rem_cas+split+splice");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verified: yes"), std::string::npos);
  EXPECT_EQ(cli("incremental --from-graph " + path("g.txt") + " --racy --spec none+rem_cas+split+splice").code, 1);
}

TEST_F(CliTest, BenchCsv) {
  ASSERT_EQ(cli("gen ba --n 300 --attach 2 --out " + path("g.txt")).code, 0);
  const auto r = cli("bench --suite " + path("g.txt") + " --specs kout+async+split,none+sv --worker-list 1,2 --repeats 2");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 1 + 4);
  EXPECT_EQ(r.out.rfind("graph,spec,sample,finish,find,splice,workers,", 0), 0u);
}

TEST_F(CliTest, SingleWorkerIsBitIdentical) {
  ASSERT_EQ(cli("--seed 5 gen rmat --scale 11 --ef 6 --out " + path("g.txt")).code, 0);
  for (const char* spec : {"kout_rand+jtb+two_try", "bfs+crfa", "hb+lp"}) {
    cli("--workers 1 --seed 9 static " + path("g.txt") + " --spec " + spec + " --out " + path("l1.txt"));
    cli("--workers 1 --seed 9 static " + path("g.txt") + " --spec " + spec + " --out " + path("l2.txt"));
    EXPECT_EQ(slurp(path("l1.txt")), slurp(path("l2.txt"))) << spec;
  }
  cli("--workers 1 forest " + path("g.txt") + " --spec kout+early+split --out " + path("f1.txt"));
  cli("--workers 1 forest " + path("g.txt") + " --spec kout+early+split --out " + path("f2.txt"));
  EXPECT_EQ(slurp(path("f1.txt")), slurp(path("f2.txt")));
  EXPECT_FALSE(slurp(path("f1.txt")).empty());
}
