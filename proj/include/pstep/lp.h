#ifndef PSTEP_LP_H_
#define PSTEP_LP_H_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pstep {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct Coefficient {
  int row = 0;
  double value = 0.0;
};

struct LpRow {
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
  std::string name;
};

struct LpColumn {
  double cost = 0.0;
  double lower = 0.0;
  double upper = kInfinity;
  std::vector<Coefficient> entries;  // sorted by row, no duplicates
  std::string name;
};

class StructureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Minimization problem over bounded columns and sparse sense-tagged rows.
// Stored column-major, which is what the simplex prices over.
class LinearProgram {
 public:
  int AddRow(RowSense sense, double rhs, std::string name = {});
  // Throws StructureError if an entry references a missing row.
  int AddColumn(LpColumn column);

  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_columns() const { return static_cast<int>(columns_.size()); }
  const LpRow& row(int i) const { return rows_[i]; }
  const LpColumn& column(int j) const { return columns_[j]; }
  const std::vector<LpColumn>& columns() const { return columns_; }

  // Row activity A_i x for a primal point.
  std::vector<double> RowActivity(const std::vector<double>& x) const;

  // CPLEX-LP text for cross-checking with external solvers.
  std::string ToLpFormat() const;

 private:
  std::vector<LpRow> rows_;
  std::vector<LpColumn> columns_;
};

// Returns `lp` extended by `columns`. Any basis of `lp` stays a valid warm
// start: the new columns enter nonbasic at their lower bound.
LinearProgram AddColumns(LinearProgram lp, std::vector<LpColumn> columns);

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

// Opaque warm-start descriptor. `rows` holds the status of each row's
// logical variable.
struct Basis {
  std::vector<VarStatus> columns;
  std::vector<VarStatus> rows;
  bool empty() const { return rows.empty(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> primal;
  // Minimization convention: <= rows have duals <= 0, >= rows duals >= 0.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  Basis basis;
  int iterations = 0;
  bool warm_started = false;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  int max_iterations = 200000;
  int refactor_interval = 64;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int stall_threshold = 40;
};

LpSolution SolveLp(const LinearProgram& lp, const Basis* warm = nullptr,
                   const SimplexOptions& options = {});

// Dual objective b'y plus the bound terms of the reduced costs. Equals the
// primal objective at an optimal solution.
double DualObjective(const LinearProgram& lp, const LpSolution& solution);

}  // namespace pstep

#endif  // PSTEP_LP_H_
