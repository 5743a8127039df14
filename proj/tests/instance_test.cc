#include "pstep/instance.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pstep/oracle.h"
#include "support.h"

namespace pstep {
namespace {

const char* kTwoCustomers = R"({
  "name": "two", "n": 2, "Q": 10, "K": 2,
  "demands": [0, 3, 4, 0],
  "cost": [[0, 1, 2, 0], [1, 0, 3, 1], [2, 3, 0, 2], [0, 1, 2, 0]]
})";

TEST(ParseInstance, NativeFieldsMapDirectly) {
  const Instance inst = ParseInstance(std::string(kTwoCustomers), InstanceFormat::kNative);
  EXPECT_EQ(inst.n, 2);
  EXPECT_EQ(inst.capacity, 10);
  EXPECT_EQ(inst.fleet_size, 2);
  EXPECT_EQ(inst.demand, (std::vector<double>{0, 3, 4, 0}));
  EXPECT_EQ(inst.cost(1, 2), 3);
  EXPECT_EQ(inst.time, inst.cost);  // time defaults to cost
  EXPECT_FALSE(inst.has_windows());
}

TEST(ParseInstance, NativeRoundTrip) {
  const Instance inst = GenerateRandom({6, 11, true});
  const Instance again = ParseInstance(ToNativeJson(inst), InstanceFormat::kNative);
  EXPECT_EQ(again.cost, inst.cost);
  EXPECT_EQ(again.time, inst.time);
  EXPECT_EQ(*again.windows, *inst.windows);
  EXPECT_EQ(again.service, inst.service);
}

TEST(ParseInstance, ZeroCustomerDemandNamesTheField) {
  std::string text = kTwoCustomers;
  text.replace(text.find("[0, 3, 4, 0]"), 12, "[0, 0, 4, 0]");
  try {
    ParseInstance(text, InstanceFormat::kNative);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "demands");
  }
}

TEST(ParseInstance, DemandAboveCapacityIsRejected) {
  std::string text = kTwoCustomers;
  text.replace(text.find("[0, 3, 4, 0]"), 12, "[0, 3, 40, 0]");
  EXPECT_THROW(ParseInstance(text, InstanceFormat::kNative), ValidationError);
}

TEST(ParseInstance, SyntaxErrorReportsLine) {
  const std::string text = "{\n  \"n\": 2,\n  \"Q\": ,\n}";
  try {
    ParseInstance(text, InstanceFormat::kNative);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

const char* kSolomonTiny = R"(C101

VEHICLE
NUMBER     CAPACITY
  2         200

CUSTOMER
CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE   TIME

    0      0          0          0          0       1236          0
    1      0          1         10          0       1000         90
    2      1          0         20          0       1000         90
)";

TEST(ParseInstance, SolomonTruncatesToOneDecimal) {
  const Instance inst = ParseInstance(std::string(kSolomonTiny), InstanceFormat::kSolomon);
  EXPECT_EQ(inst.name, "C101");
  EXPECT_EQ(inst.n, 2);
  EXPECT_EQ(inst.fleet_size, 2);
  EXPECT_EQ(inst.capacity, 200);
  // sqrt(2) = 1.41421... truncated, not rounded
  EXPECT_DOUBLE_EQ(inst.cost(1, 2), 1.4);
  EXPECT_DOUBLE_EQ(inst.cost(0, 1), 1.0);
  ASSERT_TRUE(inst.has_windows());
  EXPECT_EQ((*inst.windows)[3].close, 1236);  // depot copy
  EXPECT_EQ(inst.service[1], 90);
  EXPECT_EQ(inst.service[3], 0);
}

TEST(ParseInstance, SolomonBadRowReportsLine) {
  std::string text = kSolomonTiny;
  text += "    3      1\n";
  try {
    ParseInstance(text, InstanceFormat::kSolomon);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 13);
  }
}

TEST(ShortClusters, TwoClustersOfTwo) {
  const Instance inst = GenerateShortClusters({2, 1, 1, 2});
  EXPECT_EQ(inst.n, 4);
  EXPECT_EQ(inst.capacity, 4);
  EXPECT_EQ(inst.fleet_size, 4);
  EXPECT_EQ(inst.cost(1, 2), 0.0);
  EXPECT_EQ(inst.cost(1, 3), 1.0);
  EXPECT_EQ(inst.cost(2, 4), 1.0);
  EXPECT_TRUE(inst.cost.IsSymmetric());
  for (int i = 0; i < inst.num_nodes(); ++i) EXPECT_EQ(inst.cost(i, i), 0.0);
}

TEST(ShortClusters, ThreeClustersOnATriangle) {
  const Instance inst = GenerateShortClusters({2, 2, 1, 3});
  EXPECT_EQ(inst.n, 6);
  for (int a : {1, 2}) {
    EXPECT_DOUBLE_EQ(inst.cost(a, 3), 1.0);
    EXPECT_DOUBLE_EQ(inst.cost(a, 5), 1.0);
  }
  EXPECT_DOUBLE_EQ(inst.cost(3, 6), 1.0);
}

TEST(ShortClusters, WrongClusterCountIsRejected) {
  try {
    GenerateShortClusters({2, 1, 1, 3});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "m");
  }
}

TEST(ShortClusters, EveryStepPaysAnEdge) {
  for (const ClusterSpec spec : {ClusterSpec{2, 1, 1, 2}, ClusterSpec{3, 1, 1, 2},
                                 ClusterSpec{2, 2, 1, 3}}) {
    const Instance inst = GenerateShortClusters(spec);
    for (const auto& col : EnumeratePSteps(inst, spec.p)) {
      if (col.arc_count() == spec.p) EXPECT_GE(col.cost, 1.0 - 1e-12);
    }
  }
}

TEST(PolygonChord, MatchesTrigonometry) {
  EXPECT_DOUBLE_EQ(PolygonChord(2, 1, 1.0), 1.0);
  EXPECT_NEAR(PolygonChord(4, 2, 1.0), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(PolygonChord(6, 3, 1.0), 2.0, 1e-12);
  // radius of a unit-edge pentagon times the chord angle
  const double r = 1.0 / (2 * std::sin(std::numbers::pi / 5));
  EXPECT_NEAR(PolygonChord(5, 2, 1.0), 2 * r * std::sin(2 * std::numbers::pi / 5), 1e-12);
}

TEST(WideClusters, TwoClustersOfThree) {
  const Instance inst = GenerateWideClusters({2, 1, 1, 2});
  EXPECT_EQ(inst.n, 6);
  EXPECT_EQ(inst.cost(1, 3), 0.0);
  EXPECT_EQ(inst.cost(3, 4), 1.0);
  EXPECT_EQ(inst.cost(0, 1), 10.0);
  EXPECT_TRUE(inst.cost.IsSymmetric());
}

TEST(WideClusters, SingleClusterForcesTheDepot) {
  const Instance inst = GenerateWideClusters({2, 1, 1, 1});
  EXPECT_EQ(inst.n, 3);
  // three customers, no three-arc path can avoid both depot copies
  for (const auto& col : EnumeratePSteps(inst, 3)) {
    EXPECT_TRUE(col.first() == 0 || col.last() == inst.sink());
  }
}

TEST(WideClusters, ZeroCostStepsExist) {
  const Instance inst = GenerateWideClusters({3, 1, 1, 2});
  int zero = 0;
  for (const auto& col : EnumeratePSteps(inst, 3)) zero += col.cost == 0.0;
  EXPECT_GT(zero, 0);
}

TEST(WideClusters, TooSmallIsRejected) {
  // p' = 2*3+2 = 8 > 1*(3+1)
  EXPECT_THROW(GenerateWideClusters({3, 2, 2, 1}), ValidationError);
}

TEST(GenerateRandom, SameSeedSameInstance) {
  EXPECT_EQ(ToNativeJson(GenerateRandom({5, 42})), ToNativeJson(GenerateRandom({5, 42})));
  EXPECT_NE(GenerateRandom({5, 42}).cost, GenerateRandom({5, 43}).cost);
}

TEST(GenerateRandom, DemandsRespectTheSpec) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = GenerateRandom({8, seed});
    const double cap = std::ceil(inst.capacity / 3);
    for (int i = 1; i <= inst.n; ++i) {
      EXPECT_GE(inst.demand[i], 1);
      EXPECT_LE(inst.demand[i], cap);
      EXPECT_EQ(inst.demand[i], std::floor(inst.demand[i]));
    }
    EXPECT_NO_THROW(Validate(inst));
  }
}

TEST(GenerateRandom, WindowsAdmitTheDirectTrip) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = GenerateRandom({8, seed, true});
    ASSERT_TRUE(inst.has_windows());
    for (int i = 1; i <= inst.n; ++i) {
      const auto& w = (*inst.windows)[i];
      EXPECT_LE(w.open, inst.time(0, i));
      EXPECT_GE(w.close, inst.time(0, i));
      EXPECT_TRUE(testing::WindowFeasible(inst, {0, i, inst.sink()}));
    }
  }
}

TEST(Instance, BigMIsClippedAtZero) {
  Instance inst = testing::MakeInstance(
      1, 5, 1, {1}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  inst = testing::WithWindows(inst, {{0, 100}, {50, 60}, {0, 100}}, 0);
  EXPECT_EQ(inst.BigM(0, 1), 50);
  EXPECT_EQ(inst.BigM(1, 2), 60);
  EXPECT_EQ(inst.BigM(1, 0), 60);
  inst = testing::WithWindows(inst, {{0, 10}, {50, 60}, {0, 100}}, 0);
  EXPECT_EQ(inst.BigM(0, 1), 0);
}

}  // namespace
}  // namespace pstep
