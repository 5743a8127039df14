#ifndef PSTEP_VALIDATION_H_
#define PSTEP_VALIDATION_H_

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pstep/formulation.h"
#include "pstep/instance.h"

namespace pstep {

// |a - b| <= rel * max(1, |b|). The floor keeps zero-valued bounds
// comparable.
bool RelativeClose(double a, double b, double rel = 1e-6);

struct ValidationOptions {
  std::uint64_t seed = 1;
  int instances = 20;
  int n_min = 4;
  int n_max = 8;
  int dual_samples = 100;
  bool time_windows = false;
  int workers = 1;
};

// Random instances with n cycling through n_min..n_max and seeds
// seed, seed+1, ...
std::vector<Instance> SeededCorpus(const ValidationOptions& opt);

// Duals with the master's sign pattern: free partition/flow duals, and
// nonpositive fleet, load and (with windows) time duals on a random subset
// of arcs.
DualSolution RandomDuals(const Instance& inst, std::mt19937_64& rng,
                         bool time_windows);

// Largest violation of a row or bound of `master` at the given point:
// column values in pool order plus the load (and service-start) values.
double MasterViolation(const MasterModel& master,
                       const std::vector<double>& lambda,
                       const std::vector<double>& phi,
                       const std::vector<double>& omega);

struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

const std::vector<std::string>& SuiteNames();

// Runs one suite, or every suite for "all". Throws std::invalid_argument
// for an unknown name. `on_check` sees each check as it completes.
std::vector<Check> RunSuite(const std::string& suite,
                            const ValidationOptions& opt,
                            const std::function<void(const Check&)>& on_check = {});

}  // namespace pstep

#endif  // PSTEP_VALIDATION_H_
