#include "pstep/lp.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "pstep/formulation.h"
#include "pstep/instance.h"
#include "pstep/oracle.h"

namespace pstep {
namespace {

LpColumn Col(double cost, std::vector<Coefficient> entries, double lower = 0.0,
             double upper = kInfinity) {
  LpColumn c;
  c.cost = cost;
  c.lower = lower;
  c.upper = upper;
  c.entries = std::move(entries);
  return c;
}

// Optimality certificate computed from the LP data alone: primal
// feasibility, sign-correct duals, reduced costs consistent with the bound
// each column sits at, and zero duality gap.
void ExpectCertifiedOptimal(const LinearProgram& lp, const LpSolution& sol,
                            double tol = 1e-7) {
  ASSERT_TRUE(sol.optimal());
  const auto act = lp.RowActivity(sol.primal);
  double cx = 0.0;
  for (int j = 0; j < lp.num_columns(); ++j) {
    const auto& c = lp.column(j);
    EXPECT_GE(sol.primal[j], c.lower - tol);
    EXPECT_LE(sol.primal[j], c.upper + tol);
    cx += c.cost * sol.primal[j];
    double d = c.cost;
    for (const auto& e : c.entries) d -= e.value * sol.row_duals[e.row];
    if (d > tol) EXPECT_NEAR(sol.primal[j], c.lower, tol) << "column " << j;
    if (d < -tol) EXPECT_NEAR(sol.primal[j], c.upper, tol) << "column " << j;
  }
  for (int r = 0; r < lp.num_rows(); ++r) {
    const auto& row = lp.row(r);
    const double y = sol.row_duals[r];
    switch (row.sense) {
      case RowSense::kLessEqual:
        EXPECT_LE(act[r], row.rhs + tol);
        EXPECT_LE(y, tol);
        break;
      case RowSense::kGreaterEqual:
        EXPECT_GE(act[r], row.rhs - tol);
        EXPECT_GE(y, -tol);
        break;
      case RowSense::kEqual:
        EXPECT_NEAR(act[r], row.rhs, tol);
        break;
    }
    if (std::abs(y) > tol) EXPECT_NEAR(act[r], row.rhs, tol) << "row " << r;
  }
  EXPECT_NEAR(cx, sol.objective, tol * std::max(1.0, std::abs(cx)));
  EXPECT_NEAR(DualObjective(lp, sol), sol.objective,
              1e-8 * std::max(1.0, std::abs(sol.objective)));
}

TEST(SolveLp, SingleGreaterEqualRow) {
  LinearProgram lp;
  lp.AddRow(RowSense::kGreaterEqual, 3);
  lp.AddColumn(Col(1, {{0, 1}}));
  const LpSolution sol = SolveLp(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 3, 1e-12);
  EXPECT_NEAR(sol.row_duals[0], 1, 1e-12);
}

TEST(SolveLp, TextbookLessEqualRow) {
  LinearProgram lp;
  lp.AddRow(RowSense::kLessEqual, 1);
  lp.AddColumn(Col(-1, {{0, 1}}));
  lp.AddColumn(Col(-1, {{0, 1}}));
  const LpSolution sol = SolveLp(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, -1, 1e-12);
  EXPECT_NEAR(sol.row_duals[0], -1, 1e-12);
  ExpectCertifiedOptimal(lp, sol);
}

TEST(SolveLp, InfeasibleAndUnbounded) {
  LinearProgram infeasible;
  infeasible.AddRow(RowSense::kLessEqual, -1);
  infeasible.AddColumn(Col(1, {{0, 1}}));
  EXPECT_EQ(SolveLp(infeasible).status, LpStatus::kInfeasible);

  LinearProgram unbounded;
  unbounded.AddRow(RowSense::kGreaterEqual, 1);
  unbounded.AddColumn(Col(-1, {{0, 1}}));
  EXPECT_EQ(SolveLp(unbounded).status, LpStatus::kUnbounded);
}

TEST(SolveLp, CyclingExampleTerminates) {
  // Beale's example cycles under the textbook rule without anti-cycling.
  LinearProgram lp;
  lp.AddRow(RowSense::kLessEqual, 0);
  lp.AddRow(RowSense::kLessEqual, 0);
  lp.AddRow(RowSense::kLessEqual, 1);
  lp.AddColumn(Col(-0.75, {{0, 0.25}, {1, 0.5}}));
  lp.AddColumn(Col(20, {{0, -8}, {1, -12}}));
  lp.AddColumn(Col(-0.5, {{0, -1}, {1, -0.5}, {2, 1}}));
  lp.AddColumn(Col(6, {{0, 9}, {1, 3}}));
  const LpSolution sol = SolveLp(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, -1.25, 1e-12);
  ExpectCertifiedOptimal(lp, sol);
}

TEST(SolveLp, UpperBoundsAndEqualities) {
  // min -x - 2y, x + y = 3, 0 <= x <= 2, 0 <= y <= 2
  LinearProgram lp;
  lp.AddRow(RowSense::kEqual, 3);
  lp.AddColumn(Col(-1, {{0, 1}}, 0, 2));
  lp.AddColumn(Col(-2, {{0, 1}}, 0, 2));
  const LpSolution sol = SolveLp(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, -5, 1e-12);
  EXPECT_NEAR(sol.primal[1], 2, 1e-12);
  ExpectCertifiedOptimal(lp, sol);
}

TEST(SolveLp, NonzeroLowerBounds) {
  LinearProgram lp;
  lp.AddRow(RowSense::kLessEqual, 10);
  lp.AddColumn(Col(2, {{0, 1}}, 3, 8));
  lp.AddColumn(Col(-1, {{0, 1}}, -2, 4));
  const LpSolution sol = SolveLp(lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, 2 * 3 - 4, 1e-12);
  ExpectCertifiedOptimal(lp, sol);
}

TEST(SolveLp, StructureErrorOnMissingRow) {
  LinearProgram lp;
  lp.AddRow(RowSense::kLessEqual, 1);
  EXPECT_THROW(lp.AddColumn(Col(1, {{3, 1}})), StructureError);
}

LinearProgram RandomLp(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> sense(0, 2);
  LinearProgram lp;
  // A known interior point keeps every instance feasible.
  std::vector<double> x0(cols);
  for (auto& v : x0) v = 0.5 + 0.5 * (u(rng) + 1);
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
  for (auto& row : a) {
    for (auto& v : row) v = std::abs(u(rng)) < 0.4 ? 0.0 : u(rng);
  }
  for (int r = 0; r < rows; ++r) {
    double act = 0;
    for (int c = 0; c < cols; ++c) act += a[r][c] * x0[c];
    const int s = sense(rng);
    if (s == 0) lp.AddRow(RowSense::kLessEqual, act + 0.3);
    if (s == 1) lp.AddRow(RowSense::kGreaterEqual, act - 0.3);
    if (s == 2) lp.AddRow(RowSense::kEqual, act);
  }
  for (int c = 0; c < cols; ++c) {
    std::vector<Coefficient> e;
    for (int r = 0; r < rows; ++r) {
      if (a[r][c] != 0.0) e.push_back({r, a[r][c]});
    }
    lp.AddColumn(Col(u(rng), e, 0, 3));
  }
  return lp;
}

TEST(SolveLp, RandomProgramsAreCertified) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const LinearProgram lp = RandomLp(rng, 3 + trial % 7, 4 + trial % 11);
    const LpSolution sol = SolveLp(lp);
    ExpectCertifiedOptimal(lp, sol);
  }
}

TEST(SolveLp, DeterministicBasis) {
  std::mt19937_64 rng(17);
  const LinearProgram lp = RandomLp(rng, 6, 12);
  const LpSolution a = SolveLp(lp);
  const LpSolution b = SolveLp(lp);
  EXPECT_EQ(a.basis.columns, b.basis.columns);
  EXPECT_EQ(a.basis.rows, b.basis.rows);
  EXPECT_EQ(a.primal, b.primal);
}

TEST(AddColumns, WarmRestartMatchesColdSolve) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const LinearProgram full = RandomLp(rng, 5, 14);
    LinearProgram head;
    for (int r = 0; r < full.num_rows(); ++r) {
      head.AddRow(full.row(r).sense, full.row(r).rhs);
    }
    for (int c = 0; c < 8; ++c) head.AddColumn(full.column(c));
    const LpSolution first = SolveLp(head);
    if (!first.optimal()) continue;  // the interior point may need later columns
    std::vector<LpColumn> rest(full.columns().begin() + 8, full.columns().end());
    const LinearProgram grown = AddColumns(head, rest);
    const LpSolution warm = SolveLp(grown, &first.basis);
    const LpSolution cold = SolveLp(grown);
    ASSERT_TRUE(cold.optimal());
    EXPECT_TRUE(warm.warm_started);
    EXPECT_NEAR(warm.objective, cold.objective, 1e-8 * std::max(1.0, std::abs(cold.objective)));
    ExpectCertifiedOptimal(grown, warm);
  }
}

TEST(AddColumns, DuplicateColumnWarmMatchesCold) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearProgram lp = RandomLp(rng, 4, 6);
    const LpSolution sol = SolveLp(lp);
    ASSERT_TRUE(sol.optimal());
    // a bounded copy adds capacity, so the value can only drop
    const LinearProgram grown = AddColumns(lp, {lp.column(trial % 6)});
    const LpSolution warm = SolveLp(grown, &sol.basis);
    const LpSolution cold = SolveLp(grown);
    EXPECT_NEAR(warm.objective, cold.objective, 1e-9);
    EXPECT_LE(warm.objective, sol.objective + 1e-9);
    ExpectCertifiedOptimal(grown, warm);
  }
}

TEST(AddColumns, PricedOutColumnNeedsNoPivot) {
  std::mt19937_64 rng(9);
  const LinearProgram lp = RandomLp(rng, 4, 6);
  const LpSolution sol = SolveLp(lp);
  ASSERT_TRUE(sol.optimal());
  // Cost it so its reduced cost under the current duals is +1.
  LpColumn extra = Col(0, {{0, 1.0}, {2, -0.5}});
  extra.cost = 1.0 + sol.row_duals[0] * 1.0 + sol.row_duals[2] * -0.5;
  const LpSolution warm = SolveLp(AddColumns(lp, {extra}), &sol.basis);
  ASSERT_TRUE(warm.optimal());
  EXPECT_EQ(warm.iterations, 0);
  EXPECT_NEAR(warm.objective, sol.objective, 1e-12);
}

TEST(AddColumns, MissingOptimalColumn) {
  // min 3a + 2b + c, a + c >= 1, b + c >= 1; without c the optimum is 5,
  // with c it is 1.
  LinearProgram lp;
  lp.AddRow(RowSense::kGreaterEqual, 1);
  lp.AddRow(RowSense::kGreaterEqual, 1);
  lp.AddColumn(Col(3, {{0, 1}}));
  lp.AddColumn(Col(2, {{1, 1}}));
  const LpSolution before = SolveLp(lp);
  EXPECT_NEAR(before.objective, 5, 1e-12);
  const LinearProgram grown = AddColumns(lp, {Col(1, {{0, 1}, {1, 1}})});
  EXPECT_NEAR(SolveLp(grown, &before.basis).objective, 1, 1e-12);
  EXPECT_NEAR(SolveLp(grown).objective, 1, 1e-12);
}

TEST(SolveLp, VehicleFlowOnClusterLayoutMatchesExplicitMaster) {
  const Instance inst = GenerateShortClusters({2, 1, 1, 2});
  const LpSolution sol = SolveLp(BuildVfModel(inst, false).lp);
  ASSERT_TRUE(sol.optimal());
  EXPECT_NEAR(sol.objective, ExplicitBound(inst, 1), 1e-9);
}

TEST(LinearProgram, LpFormatMentionsEveryRow) {
  LinearProgram lp;
  lp.AddRow(RowSense::kLessEqual, 4, "cap");
  lp.AddRow(RowSense::kEqual, 1, "cover");
  LpColumn c = Col(2, {{0, 1}, {1, 1}}, 0, 5);
  c.name = "lam";
  lp.AddColumn(c);
  const std::string text = lp.ToLpFormat();
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find("cap:"), std::string::npos);
  EXPECT_NE(text.find("cover:"), std::string::npos);
  EXPECT_NE(text.find("lam"), std::string::npos);
}

}  // namespace
}  // namespace pstep
