#ifndef PSTEP_FORMULATION_H_
#define PSTEP_FORMULATION_H_

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pstep/instance.h"
#include "pstep/lp.h"

namespace pstep {

// A partial path of the p-step family: exactly p arcs, or 1..p arcs when it
// leaves the depot origin.
struct PStepColumn {
  std::vector<int> path;
  double cost = 0.0;
  double load = 0.0;  // demand of every visited node except the first
  // Indexed by node 0..n. `visits` is 1 for every visited node other than
  // the last; `endpoint` is +1 at the first node and -1 at the last.
  std::vector<double> visits;
  std::vector<double> endpoint;
  // Demand accumulated up to and including path[k].
  std::vector<double> cumulative_load;

  int arc_count() const { return static_cast<int>(path.size()) - 1; }
  int first() const { return path.front(); }
  int last() const { return path.back(); }
  bool starts_at_depot() const { return path.front() == 0; }
  bool operator==(const PStepColumn& other) const { return path == other.path; }
};

enum class PathDefect {
  kNone,
  kTooShort,         // fewer than one arc
  kRepeatedNode,     // not elementary
  kMisplacedDepot,   // 0 not first, n+1 not last, or unknown node
  kIllegalArc,       // e.g. the empty route 0 -> n+1
  kStepCount,        // wrong arc count for the step size
  kCapacity,
  kTimeWindow,
};

std::string_view ToString(PathDefect defect);

class ColumnError : public std::invalid_argument {
 public:
  ColumnError(PathDefect defect, const std::string& what)
      : std::invalid_argument(what), defect_(defect) {}
  PathDefect defect() const { return defect_; }

 private:
  PathDefect defect_;
};

// Earliest service start at each path position when leaving path[0] at its
// window opening. Empty if some window closes before the vehicle arrives.
std::vector<double> EarliestServiceStarts(const Instance& inst,
                                          const std::vector<int>& path);

PathDefect CheckPath(const Instance& inst, const std::vector<int>& path, int p,
                     bool time_windows);

// Builds the column without validation. `path` must have at least one arc.
PStepColumn MakeColumn(const Instance& inst, std::vector<int> path);

// Validating constructor; throws ColumnError naming the violated rule.
PStepColumn ColumnFromPath(const Instance& inst, std::vector<int> path, int p,
                           bool time_windows = false);

// Two-index vehicle-flow LP with MTZ load rows and, in time-window mode,
// big-M service-start rows. Arcs that cannot appear in any feasible route as
// single steps have their flow fixed to zero.
struct CompactModel {
  LinearProgram lp;
  int num_nodes = 0;
  bool time_windows = false;
  int x_offset = 0;
  int y_offset = 0;
  int w_offset = -1;

  int x(int i, int j) const { return x_offset + i * num_nodes + j; }
  int y(int i) const { return y_offset + i; }
  int w(int i) const { return w_offset + i; }
};

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CompactModel BuildVfModel(const Instance& inst, bool time_windows);

// Duals of the restricted master, indexed by node. `u1`/`u2` are zero at
// both depot copies; `u4`/`u5` are zero on arcs without a row.
struct DualSolution {
  std::vector<double> u1;  // partition rows
  std::vector<double> u2;  // flow-conservation rows
  double u3 = 0.0;         // fleet row
  SquareMatrix u4;         // load propagation rows, <= 0
  SquareMatrix u5;         // service-start rows, <= 0

  static DualSolution Zero(const Instance& inst);
};

class PoolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Restricted master of the p-step formulation. The LP holds the continuous
// load variables (and service starts in time-window mode) first, followed
// by one column per pooled path or artificial, in insertion order.
class MasterModel {
 public:
  // Throws PoolError if a pooled column is not valid for (inst, p).
  static MasterModel Build(const Instance& inst, int p,
                           std::vector<PStepColumn> pool, bool time_windows);

  void AddColumns(std::vector<PStepColumn> columns);
  // Artificial column covering partition row of `customer` at `cost`.
  int AddArtificial(int customer, double cost);

  const LinearProgram& lp() const { return lp_; }
  const Instance& instance() const { return inst_; }
  int p() const { return p_; }
  bool time_windows() const { return time_windows_; }
  const std::vector<PStepColumn>& pool() const { return pool_; }

  int partition_row(int customer) const { return partition_row_[customer]; }
  int flow_row(int customer) const { return flow_row_[customer]; }
  int fleet_row() const { return fleet_row_; }
  int load_row(int i, int j) const { return load_row_[i * nodes_ + j]; }
  int time_row(int i, int j) const { return time_row_[i * nodes_ + j]; }

  int phi_var(int node) const { return phi_offset_ + node; }
  int omega_var(int node) const { return omega_offset_ + node; }
  int pool_var(int index) const { return pool_var_[index]; }
  const std::vector<int>& artificial_vars() const { return artificial_vars_; }

  // LP column for `column`, exactly as it is added to the master.
  LpColumn ColumnFor(const PStepColumn& column) const;

 private:
  MasterModel() = default;
  void AppendColumn(PStepColumn column);

  Instance inst_;
  int p_ = 1;
  bool time_windows_ = false;
  int nodes_ = 0;
  LinearProgram lp_;
  std::vector<PStepColumn> pool_;
  std::vector<int> pool_var_;
  std::vector<int> artificial_vars_;
  std::vector<int> partition_row_;
  std::vector<int> flow_row_;
  int fleet_row_ = -1;
  std::vector<int> load_row_;
  std::vector<int> time_row_;
  int phi_offset_ = 0;
  int omega_offset_ = -1;
};

// Duals below 1e-9 in magnitude are clamped to zero, and sign conventions
// are enforced. Throws StateError unless `solution` is optimal.
DualSolution ExtractDuals(const MasterModel& model, const LpSolution& solution);

// Arc part of the reduced cost: c_ij - u1_i - (q_j+Q) u4_ij, minus
// (s_i + t_ij + M_ij) u5_ij in time-window mode.
double ArcReducedCost(const Instance& inst, const DualSolution& duals, int i,
                      int j, bool time_windows);

// Reduced cost of `column`: arc terms in path order, then the start/end
// corrections from the flow and fleet rows.
double ReducedCost(const Instance& inst, const DualSolution& duals,
                   const PStepColumn& column, bool time_windows);

// Column pool text format: one path per line, whitespace-separated nodes.
void WritePool(std::ostream& out, const std::vector<PStepColumn>& pool);
std::vector<std::vector<int>> ReadPaths(std::istream& in);

}  // namespace pstep

#endif  // PSTEP_FORMULATION_H_
