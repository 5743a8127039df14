#ifndef PSTEP_TESTS_SUPPORT_H_
#define PSTEP_TESTS_SUPPORT_H_

#include <vector>

#include "pstep/instance.h"

namespace pstep::testing {

// Hand-built instance; time equals cost, no service, no windows.
Instance MakeInstance(int n, double capacity, int fleet,
                      const std::vector<double>& customer_demand,
                      const std::vector<std::vector<double>>& cost);

// Adds windows (one per node 0..n+1) and uniform customer service time.
Instance WithWindows(Instance inst, const std::vector<TimeWindow>& windows,
                     double service);

bool RelClose(double a, double b, double rel = 1e-6);

// Earliest-arrival recheck written independently of the library: leave
// path[0] at its opening, wait for each opening, fail past a closing.
bool WindowFeasible(const Instance& inst, const std::vector<int>& path);

// Ordered pairs (i, j) with i in 0..n, j in 1..n+1, i != j, minus (0, n+1).
long long LegalArcCount(int n);

// Elementary depot-to-depot routes when nothing binds: sum over route
// lengths k of n!/(n-k)!.
long long RouteCount(int n);

}  // namespace pstep::testing

#endif  // PSTEP_TESTS_SUPPORT_H_
