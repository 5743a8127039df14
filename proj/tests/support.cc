#include "support.h"

#include <algorithm>
#include <cmath>

namespace pstep::testing {

Instance MakeInstance(int n, double capacity, int fleet,
                      const std::vector<double>& customer_demand,
                      const std::vector<std::vector<double>>& cost) {
  Instance inst;
  inst.name = "hand";
  inst.n = n;
  inst.capacity = capacity;
  inst.fleet_size = fleet;
  inst.demand.assign(n + 2, 0.0);
  for (int i = 1; i <= n; ++i) inst.demand[i] = customer_demand[i - 1];
  inst.cost = SquareMatrix(n + 2);
  for (int i = 0; i < n + 2; ++i) {
    for (int j = 0; j < n + 2; ++j) inst.cost(i, j) = cost[i][j];
  }
  inst.time = inst.cost;
  inst.service.assign(n + 2, 0.0);
  Validate(inst);
  return inst;
}

Instance WithWindows(Instance inst, const std::vector<TimeWindow>& windows,
                     double service) {
  inst.windows = windows;
  for (int i = 1; i <= inst.n; ++i) inst.service[i] = service;
  Validate(inst);
  return inst;
}

bool RelClose(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

bool WindowFeasible(const Instance& inst, const std::vector<int>& path) {
  const auto& w = *inst.windows;
  double t = w[path[0]].open;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const int a = path[k - 1];
    const int b = path[k];
    t = std::max(t + inst.service[a] + inst.time(a, b), w[b].open);
    if (t > w[b].close + 1e-9) return false;
  }
  return true;
}

long long LegalArcCount(int n) {
  long long count = 0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 1; j <= n + 1; ++j) {
      if (i != j && !(i == 0 && j == n + 1)) ++count;
    }
  }
  return count;
}

long long RouteCount(int n) {
  long long total = 0;
  long long falling = 1;
  for (int k = 1; k <= n; ++k) {
    falling *= n - k + 1;
    total += falling;
  }
  return total;
}

}  // namespace pstep::testing
