#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "commands.h"

namespace pstep::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pstep_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Exit status of the installed binary; output goes to a scratch file.
  int Run(const std::string& args) const {
    const std::string cmd = std::string(PSTEP_CLI_PATH) + " " + args + " > " +
                            Path("stdout.txt") + " 2> " + Path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string Read(const std::string& name) const {
    std::ifstream in(Path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string Generate(const std::string& args, const std::string& name) const {
    GenerateArgs g;
    std::istringstream in(args);
    std::string key;
    while (in >> key) {
      if (key == "kind") in >> g.kind;
      if (key == "n") in >> g.n;
      if (key == "seed") in >> g.seed;
      if (key == "tw") g.tw = true;
      if (key == "p") in >> g.p;
      if (key == "q") in >> g.q;
      if (key == "k") in >> g.k;
      if (key == "m") in >> g.m;
    }
    g.out = Path(name);
    std::ostringstream sink;
    EXPECT_EQ(RunGenerate(g, sink), kOk);
    return g.out;
  }

  fs::path dir_;
};

TEST_F(CliTest, SolveWritesResultAndShowReprints) {
  const std::string inst = Generate("kind random n 5 seed 3", "inst.json");
  ASSERT_EQ(Run("solve --instance " + inst + " --p 2 --no-timing --out " +
                Path("r.json")),
            kOk);
  const std::string table = Read("stdout.txt");
  EXPECT_NE(table.find("optimal"), std::string::npos);
  ASSERT_EQ(Run("show " + Path("r.json")), kOk);
  EXPECT_EQ(Read("stdout.txt"), table);
}

TEST_F(CliTest, ModesAgree) {
  const std::string inst = Generate("kind random n 5 seed 4 tw", "inst.json");
  std::vector<double> bounds;
  for (const std::string mode : {"colgen", "explicit"}) {
    SolveArgs a;
    a.instance = inst;
    a.p = 1;
    a.tw = true;
    a.mode = mode;
    a.out = Path(mode + ".json");
    std::ostringstream sink;
    ASSERT_EQ(RunSolve(a, sink), kOk);
    std::ifstream in(a.out);
    bounds.push_back(nlohmann::json::parse(in).at("bound").get<double>());
  }
  SolveArgs vf;
  vf.instance = inst;
  vf.p = 1;
  vf.tw = true;
  vf.mode = "vf";
  vf.out = Path("vf.json");
  std::ostringstream sink;
  ASSERT_EQ(RunSolve(vf, sink), kOk);
  std::ifstream in(vf.out);
  const double v = nlohmann::json::parse(in).at("bound").get<double>();
  EXPECT_NEAR(bounds[0], v, 1e-6 * std::max(1.0, std::abs(v)));
  EXPECT_NEAR(bounds[1], v, 1e-6 * std::max(1.0, std::abs(v)));
}

TEST_F(CliTest, UsageErrors) {
  const std::string inst = Generate("kind random n 4 seed 1", "inst.json");
  EXPECT_EQ(Run("solve --instance " + inst + " --p 99"), kUsage);
  EXPECT_EQ(Run("solve --instance " + Path("missing.json") + " --p 2"), kUsage);
  EXPECT_EQ(Run("solve --instance " + inst + " --p 2 --mode nope"), kUsage);
  EXPECT_EQ(Run("sweep --instance " + inst + " --p-list 1,x"), kUsage);
  EXPECT_EQ(Run("solve --instance " + inst + " --p 2 --tw"), kUsage);
  EXPECT_EQ(Run("frobnicate"), kUsage);
  EXPECT_EQ(Run(""), kUsage);
}

TEST_F(CliTest, MalformedInstanceIsAUsageError) {
  std::ofstream(Path("bad.json")) << "{ \"n\": 2, \"Q\": ";
  EXPECT_EQ(Run("solve --instance " + Path("bad.json") + " --p 1"), kUsage);
  EXPECT_NE(Read("stderr.txt").find("line"), std::string::npos);
}

TEST_F(CliTest, InfeasibleInstanceExitsTwo) {
  std::ofstream(Path("tight.json")) << R"({"n": 2, "Q": 5, "K": 1,
    "demands": [0, 3, 3, 0],
    "cost": [[0, 1, 1, 0], [1, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 0]]})";
  EXPECT_EQ(Run("solve --instance " + Path("tight.json") + " --p 2"), kInfeasible);
  EXPECT_EQ(Run("solve --instance " + Path("tight.json") + " --p 2 --mode explicit"),
            kInfeasible);
}

TEST_F(CliTest, SweepReportsTheReversal) {
  const std::string inst = Generate("kind short-clusters p 2 q 1 k 1", "sc.json");
  SweepArgs a;
  a.instance = inst;
  a.timing = false;
  a.out = Path("sweep.json");
  std::ostringstream table;
  ASSERT_EQ(RunSweep(a, table), kOk);
  EXPECT_NE(table.str().find("reversal"), std::string::npos);
  std::ostringstream again;
  ASSERT_EQ(RunShow(a.out, again), kOk);
  EXPECT_EQ(again.str(), table.str());
  std::ifstream in(a.out);
  const auto report = nlohmann::json::parse(in);
  EXPECT_EQ(report.at("rows").size(), 5u);
}

TEST_F(CliTest, ValidateSmallCorpus) {
  EXPECT_EQ(Run("validate --suite equivalence --n-min 4 --n-max 5 --instances 2"), kOk);
  EXPECT_NE(Read("stdout.txt").find("PASS"), std::string::npos);
  EXPECT_EQ(Run("validate --suite nope"), kUsage);
}

TEST_F(CliTest, PoolRoundTrip) {
  const std::string inst = Generate("kind random n 5 seed 6", "inst.json");
  ASSERT_EQ(Run("solve --instance " + inst + " --p 3 --no-timing --pool-out " +
                Path("pool.txt") + " --out " + Path("a.json")),
            kOk);
  ASSERT_EQ(Run("solve --instance " + inst + " --p 3 --no-timing --pool-in " +
                Path("pool.txt") + " --out " + Path("b.json")),
            kOk);
  std::ifstream a(Path("a.json"));
  std::ifstream b(Path("b.json"));
  const auto ja = nlohmann::json::parse(a);
  const auto jb = nlohmann::json::parse(b);
  EXPECT_NEAR(ja.at("bound").get<double>(), jb.at("bound").get<double>(), 1e-9);
  EXPECT_LE(jb.at("iterations").get<int>(), ja.at("iterations").get<int>());
}

TEST(ParsePList, AcceptsAndRejects) {
  EXPECT_EQ(ParsePList("1,2,5", 5), (std::vector<int>{1, 2, 5}));
  EXPECT_THROW(ParsePList("1,6", 5), UsageError);
  EXPECT_THROW(ParsePList("0", 5), UsageError);
  EXPECT_THROW(ParsePList("", 5), UsageError);
  EXPECT_THROW(ParsePList("2,,3", 5), UsageError);
}

}  // namespace
}  // namespace pstep::cli
