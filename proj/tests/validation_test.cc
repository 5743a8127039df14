#include "pstep/validation.h"

#include <gtest/gtest.h>

#include "pstep/oracle.h"

namespace pstep {
namespace {

TEST(RelativeClose, FloorAtOne) {
  EXPECT_TRUE(RelativeClose(0.0, 0.0));
  EXPECT_TRUE(RelativeClose(5e-7, 0.0));
  EXPECT_FALSE(RelativeClose(2e-6, 0.0));
  EXPECT_TRUE(RelativeClose(1000.0005, 1000.0));
  EXPECT_FALSE(RelativeClose(1000.002, 1000.0));
}

TEST(SeededCorpus, CyclesSizes) {
  ValidationOptions opt;
  opt.instances = 7;
  opt.n_min = 4;
  opt.n_max = 6;
  const auto corpus = SeededCorpus(opt);
  ASSERT_EQ(corpus.size(), 7u);
  const std::vector<int> want{4, 5, 6, 4, 5, 6, 4};
  for (std::size_t k = 0; k < corpus.size(); ++k) EXPECT_EQ(corpus[k].n, want[k]);
  opt.time_windows = true;
  for (const auto& inst : SeededCorpus(opt)) EXPECT_TRUE(inst.has_windows());
}

TEST(RandomDuals, SignPattern) {
  std::mt19937_64 rng(3);
  const Instance inst = GenerateRandom({6, 1, true});
  for (int trial = 0; trial < 50; ++trial) {
    const DualSolution d = RandomDuals(inst, rng, true);
    EXPECT_LE(d.u3, 0);
    EXPECT_EQ(d.u1[0], 0);
    EXPECT_EQ(d.u2[inst.sink()], 0);
    for (int i = 0; i < inst.num_nodes(); ++i) {
      for (int j = 0; j < inst.num_nodes(); ++j) {
        EXPECT_LE(d.u4(i, j), 0);
        EXPECT_LE(d.u5(i, j), 0);
        if (!inst.IsLegalArc(i, j)) EXPECT_EQ(d.u4(i, j), 0);
      }
    }
  }
}

TEST(MasterViolation, ZeroAtOptimumAndPositiveWhenPerturbed) {
  const Instance inst = GenerateRandom({5, 2});
  const ExplicitSolution s = SolveExplicit(inst, 2);
  const MasterModel m = MasterModel::Build(inst, 2, s.pool, false);
  EXPECT_LE(MasterViolation(m, s.lambda, s.phi, {}), 1e-9);
  auto lambda = s.lambda;
  const auto it = std::max_element(lambda.begin(), lambda.end());
  *it += 0.25;
  EXPECT_GE(MasterViolation(m, lambda, s.phi, {}), 0.25 - 1e-9);
}

TEST(RunSuite, EverySuitePassesOnASmallCorpus) {
  ValidationOptions opt;
  opt.instances = 3;
  opt.n_min = 4;
  opt.n_max = 5;
  opt.dual_samples = 10;
  for (bool tw : {false, true}) {
    opt.time_windows = tw;
    int seen = 0;
    const auto checks = RunSuite("all", opt, [&](const Check&) { ++seen; });
    ASSERT_FALSE(checks.empty());
    EXPECT_EQ(seen, static_cast<int>(checks.size()));
    std::set<std::string> suites;
    for (const auto& c : checks) {
      EXPECT_TRUE(c.passed) << c.suite << "/" << c.name << ": " << c.detail;
      suites.insert(c.suite);
    }
    EXPECT_EQ(suites.size(), SuiteNames().size());
  }
}

TEST(RunSuite, UnknownSuite) {
  EXPECT_THROW(RunSuite("nope", {}), std::invalid_argument);
}

}  // namespace
}  // namespace pstep
