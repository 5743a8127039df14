#ifndef PSTEP_ORACLE_H_
#define PSTEP_ORACLE_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pstep/formulation.h"
#include "pstep/instance.h"
#include "pstep/lp.h"

namespace pstep {

struct EnumerationBudget {
  std::int64_t max_paths = 10'000'000;
  int max_nodes = 12;  // customers
};

class EnumerationOverflow : public std::runtime_error {
 public:
  EnumerationOverflow(std::int64_t count, const std::string& what)
      : std::runtime_error(what), count_(count) {}
  std::int64_t count() const { return count_; }

 private:
  std::int64_t count_;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every valid column of the p-step set in depth-first order, start nodes and
// successors ascending. Throws std::invalid_argument above budget.max_nodes
// and EnumerationOverflow once budget.max_paths is passed.
std::vector<PStepColumn> EnumeratePSteps(const Instance& inst, int p,
                                         bool time_windows = false,
                                         const EnumerationBudget& budget = {});

// Complete routes 0 -> ... -> n+1.
std::vector<PStepColumn> EnumerateRoutes(const Instance& inst,
                                         bool time_windows = false,
                                         const EnumerationBudget& budget = {});

struct ExplicitSolution {
  LpStatus status = LpStatus::kIterationLimit;
  double bound = 0.0;
  std::vector<PStepColumn> pool;
  std::vector<double> lambda;
  std::vector<double> phi;
  std::vector<double> omega;
};

// Master over the full p-step set, no artificials.
ExplicitSolution SolveExplicit(const Instance& inst, int p,
                               bool time_windows = false,
                               const EnumerationBudget& budget = {});
// Throws InfeasibleError when the master has no feasible point.
double ExplicitBound(const Instance& inst, int p, bool time_windows = false,
                     const EnumerationBudget& budget = {});

// Route LP with partition rows and the fleet row only.
ExplicitSolution SolveSpLp(const Instance& inst, bool time_windows = false,
                           const EnumerationBudget& budget = {});
double SpLpBound(const Instance& inst, bool time_windows = false,
                 const EnumerationBudget& budget = {});

// LP optimum of the vehicle-flow model; throws InfeasibleError.
double VfBound(const Instance& inst, bool time_windows = false);

struct IntegerSolution {
  bool feasible = false;
  double value = 0.0;
  std::vector<std::vector<int>> routes;
};

// Exhaustive partition of the customers into at most K routes, each
// sequenced by trying every permutation. Requires n <= 8.
IntegerSolution IntegerOptimum(const Instance& inst, bool time_windows = false);

// Minimum reduced cost over the full p-step set; +inf if the set is empty.
double MinReducedCostBruteForce(const Instance& inst, int p,
                                const DualSolution& duals, bool time_windows,
                                const EnumerationBudget& budget = {});

class CertificateViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// phi_i = sum of lambda_s times the load accumulated on s up to i, over the
// paths through i. phi_0 = 0 and phi_{n+1} = Q.
std::vector<double> CombineCumulativeLoads(const Instance& inst,
                                           const std::vector<PStepColumn>& routes,
                                           const std::vector<double>& lambda);

// Same combination for earliest service starts; omega_0 is the depot
// opening and omega_{n+1} its closing.
std::vector<double> CombineServiceStarts(const Instance& inst,
                                         const std::vector<PStepColumn>& routes,
                                         const std::vector<double>& lambda);

// Checks that (routes, lambda) covers every customer exactly once, then that
// the combined loads satisfy the bounds and every load row of the one-step
// model. Throws CertificateViolation.
std::vector<double> PhiCertificate(const Instance& inst,
                                   const std::vector<PStepColumn>& routes,
                                   const std::vector<double>& lambda);
std::vector<double> OmegaCertificate(const Instance& inst,
                                     const std::vector<PStepColumn>& routes,
                                     const std::vector<double>& lambda);

struct CutResult {
  std::vector<PStepColumn> columns;  // sorted by path
  std::vector<double> weights;
  double objective = 0.0;
};

// Cuts every pooled column into p-step pieces. Depot-start columns of k arcs
// give a leading (k mod p)-arc piece from the depot, when nonzero. Identical
// pieces are merged. Asserts piece validity, preserved arc flows, preserved
// partition/flow/fleet activity and equal objective; throws
// CertificateViolation otherwise.
CutResult CutSolution(const Instance& inst, const std::vector<PStepColumn>& pool,
                      const std::vector<double>& lambda, int p,
                      bool time_windows = false);

}  // namespace pstep

#endif  // PSTEP_ORACLE_H_
