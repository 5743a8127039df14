#ifndef PSTEP_PRICING_H_
#define PSTEP_PRICING_H_

#include <bitset>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pstep/formulation.h"
#include "pstep/instance.h"

namespace pstep {

inline constexpr int kMaxPricingNodes = 256;
using NodeSet = std::bitset<kMaxPricingNodes>;

// Partial-path state of the step-budgeted labeling.
struct Label {
  int start = 0;
  int node = 0;
  int steps = 0;
  double load = 0.0;  // excludes the start node's demand
  double time = 0.0;  // earliest service start at `node`
  NodeSet visited;    // customers on the path, including the start
  double rc = 0.0;    // arc terms of the reduced cost
  int parent = -1;    // index into the owning search's label store
};

// Precondition: same start and node, otherwise std::invalid_argument.
// True iff `a` is no worse than `b` in steps, load, cost, visited set and
// (with time windows) service start, and strictly better in one of them.
bool Dominates(const Label& a, const Label& b, bool time_windows);

struct PricingConfig {
  double tol = 1e-6;
  int max_columns_per_round = 200;
  int per_start_best = 10;
  int workers = 1;

  static PricingConfig Uncapped() {
    PricingConfig cfg;
    cfg.max_columns_per_round = std::numeric_limits<int>::max();
    cfg.per_start_best = std::numeric_limits<int>::max();
    return cfg;
  }
};

struct PricedColumn {
  PStepColumn column;
  double reduced_cost = 0.0;
};

struct PricingStats {
  std::int64_t labels_created = 0;
  std::int64_t labels_dominated = 0;
  std::int64_t columns_emitted = 0;
  // Smallest reduced cost over all candidates, including non-negative ones.
  double min_reduced_cost = std::numeric_limits<double>::infinity();
};

struct PricingResult {
  std::vector<PricedColumn> columns;  // ascending (rc, path)
  PricingStats stats;
};

// Throws std::domain_error for an illegal arc.
double ModifiedArcCost(const Instance& inst, const DualSolution& duals, int i,
                       int j, bool time_windows);

// Returns the negative reduced-cost columns of the p-step set, searching each
// start node 0..n independently on `cfg.workers` threads. Output is
// independent of the worker count.
PricingResult Price(const Instance& inst, int p, const DualSolution& duals,
                    const PricingConfig& cfg, bool time_windows);

}  // namespace pstep

#endif  // PSTEP_PRICING_H_
