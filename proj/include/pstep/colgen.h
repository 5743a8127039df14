#ifndef PSTEP_COLGEN_H_
#define PSTEP_COLGEN_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pstep/formulation.h"
#include "pstep/instance.h"
#include "pstep/pricing.h"

namespace pstep {

struct ColGenConfig {
  int p = 1;
  double tol = 1e-6;
  int max_iters = 10000;
  // Cost of the per-customer feasibility columns; unset means
  // DefaultArtificialCost(inst).
  std::optional<double> artificial_cost;
  PricingConfig pricing;
  // (iteration, new p) pairs; at that iteration the pool is merged up to the
  // new step size and the master is rebuilt. Convergence before a scheduled
  // iteration moves to the next pair immediately.
  std::vector<std::pair<int, int>> turning_points;
  // Extra starting columns, valid for `p`.
  std::vector<PStepColumn> initial_pool;
};

enum class ColGenStatus { kOptimal, kIterationLimit };

std::string ToString(ColGenStatus status);

struct IterationLog {
  int iteration = 0;
  int p = 0;
  double objective = 0.0;
  double min_reduced_cost = 0.0;
  int columns_added = 0;
};

struct ColGenResult {
  std::string instance_name;
  int p = 0;  // step size of the final master
  bool time_windows = false;
  ColGenStatus status = ColGenStatus::kIterationLimit;
  double bound = 0.0;
  int iterations = 0;
  int columns_generated = 0;
  bool infeasible_original = false;
  // Final pool and its λ values, parallel vectors.
  std::vector<PStepColumn> pool;
  std::vector<double> lambda;
  std::vector<double> phi;
  std::vector<double> omega;  // empty without time windows
  std::vector<IterationLog> log;
  PricingStats pricing;  // summed over rounds; min_reduced_cost of the last
  double wall_ms = 0.0;
};

double DefaultArtificialCost(const Instance& inst);

// Throws std::invalid_argument naming the offending field.
void ValidateConfig(const Instance& inst, const ColGenConfig& cfg);

// Depot round trips written as columns of the p-step set: (0,i) and (i,n+1)
// at p = 1, (0,i,n+1) otherwise. Trips that violate a window are skipped.
// Feasibility of the master comes from the artificial columns that
// SolveRelaxation adds on top.
std::vector<PStepColumn> InitialColumns(const Instance& inst, int p,
                                        bool time_windows);

ColGenResult SolveRelaxation(const Instance& inst, const ColGenConfig& cfg,
                             bool time_windows);

// Concatenations s + s' of pooled columns with last(s) == first(s') that
// form valid (p+k)-step columns, plus the pooled columns that stay valid.
// Sorted by path, no duplicates. Throws std::out_of_range if p+k > n+1.
std::vector<PStepColumn> TurningPointMerge(const Instance& inst,
                                           const std::vector<PStepColumn>& pool,
                                           int p, int k, bool time_windows);

// Result file layout. Only columns with λ > 1e-9 are written.
nlohmann::json ToJson(const ColGenResult& result, bool include_timing = true);
ColGenResult ColGenResultFromJson(const Instance& inst, const nlohmann::json& j);

}  // namespace pstep

#endif  // PSTEP_COLGEN_H_
