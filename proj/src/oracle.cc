#include "pstep/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace pstep {
namespace {

constexpr double kDemandTol = 1e-9;
constexpr double kCertTol = 1e-7;

class Enumerator {
 public:
  Enumerator(const Instance& inst, int p, bool tw,
             const EnumerationBudget& budget, bool routes_only)
      : inst_(inst),
        p_(p),
        tw_(tw && inst.has_windows()),
        budget_(budget),
        routes_only_(routes_only),
        seen_(inst.num_nodes(), 0) {}

  std::vector<PStepColumn> Run() {
    const int last_start = routes_only_ ? 0 : inst_.n;
    for (int s = 0; s <= last_start; ++s) {
      path_.assign(1, s);
      seen_[s] = 1;
      const double time = tw_ ? (*inst_.windows)[s].open : 0.0;
      Extend(inst_.demand[s], time);
      seen_[s] = 0;
    }
    return std::move(out_);
  }

 private:
  void Extend(double load, double time) {
    const int i = path_.back();
    const int arcs = static_cast<int>(path_.size()) - 1;
    if (arcs > 0) {
      const bool accept = routes_only_ ? i == inst_.sink()
                                       : (path_[0] == 0 || arcs == p_);
      if (accept) {
        if (static_cast<std::int64_t>(out_.size()) >= budget_.max_paths) {
          throw EnumerationOverflow(
              static_cast<std::int64_t>(out_.size()),
              "enumeration passed " + std::to_string(budget_.max_paths) +
                  " paths");
        }
        out_.push_back(MakeColumn(inst_, path_));
      }
    }
    if (arcs == p_ || i == inst_.sink()) return;
    for (int j = 1; j <= inst_.sink(); ++j) {
      if (seen_[j] || !inst_.IsLegalArc(i, j)) continue;
      if (j == inst_.sink() && path_[0] != 0 && arcs + 1 != p_) continue;
      const double next_load = load + inst_.demand[j];
      if (next_load > inst_.capacity + kDemandTol) continue;
      double next_time = 0.0;
      if (tw_) {
        const auto& w = (*inst_.windows)[j];
        next_time = std::max(time + inst_.service[i] + inst_.time(i, j), w.open);
        if (next_time > w.close + 1e-9) continue;
      }
      seen_[j] = 1;
      path_.push_back(j);
      Extend(next_load, next_time);
      path_.pop_back();
      seen_[j] = 0;
    }
  }

  const Instance& inst_;
  int p_;
  bool tw_;
  EnumerationBudget budget_;
  bool routes_only_;
  std::vector<char> seen_;
  std::vector<int> path_;
  std::vector<PStepColumn> out_;
};

void CheckBudget(const Instance& inst, const EnumerationBudget& budget) {
  if (inst.n > budget.max_nodes) {
    throw std::invalid_argument("enumeration limited to " +
                                std::to_string(budget.max_nodes) +
                                " customers, instance has " +
                                std::to_string(inst.n));
  }
  if (budget.max_paths <= 0 || budget.max_nodes <= 0) {
    throw std::invalid_argument("enumeration budget must be positive");
  }
}

std::string PathText(const std::vector<int>& path) {
  std::string s;
  for (int v : path) s += (s.empty() ? "" : "-") + std::to_string(v);
  return s;
}

// Arc flows of a weighted pool, keyed by (i, j).
std::map<std::pair<int, int>, double> ArcFlows(
    const std::vector<PStepColumn>& pool, const std::vector<double>& weight) {
  std::map<std::pair<int, int>, double> flow;
  for (std::size_t s = 0; s < pool.size(); ++s) {
    const auto& path = pool[s].path;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      flow[{path[k], path[k + 1]}] += weight[s];
    }
  }
  return flow;
}

void CheckCover(const Instance& inst, const std::vector<PStepColumn>& routes,
                const std::vector<double>& lambda) {
  if (routes.size() != lambda.size()) {
    throw CertificateViolation("routes and weights differ in length");
  }
  std::vector<double> cover(inst.num_nodes(), 0.0);
  for (std::size_t s = 0; s < routes.size(); ++s) {
    const auto& path = routes[s].path;
    if (path.front() != 0 || path.back() != inst.sink()) {
      throw CertificateViolation("path " + PathText(path) + " is not a route");
    }
    if (lambda[s] < -kCertTol) {
      throw CertificateViolation("negative weight on " + PathText(path));
    }
    for (int v : path) cover[v] += lambda[s];
  }
  for (int i = 1; i <= inst.n; ++i) {
    if (std::abs(cover[i] - 1.0) > kCertTol) {
      throw CertificateViolation("customer " + std::to_string(i) +
                                 " covered " + std::to_string(cover[i]) +
                                 " times");
    }
  }
}

ExplicitSolution SolveMaster(const MasterModel& master) {
  const LpSolution sol = SolveLp(master.lp());
  ExplicitSolution out;
  out.status = sol.status;
  out.pool = master.pool();
  if (!sol.optimal()) return out;
  out.bound = sol.objective;
  for (std::size_t s = 0; s < out.pool.size(); ++s) {
    out.lambda.push_back(sol.primal[master.pool_var(static_cast<int>(s))]);
  }
  const Instance& inst = master.instance();
  for (int v = 0; v < inst.num_nodes(); ++v) {
    out.phi.push_back(sol.primal[master.phi_var(v)]);
    if (master.time_windows()) out.omega.push_back(sol.primal[master.omega_var(v)]);
  }
  return out;
}

double BoundOrThrow(const ExplicitSolution& sol, const std::string& what) {
  if (sol.status == LpStatus::kInfeasible) {
    throw InfeasibleError(what + " is infeasible");
  }
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(what + " ended " + ToString(sol.status));
  }
  return sol.bound;
}

}  // namespace

std::vector<PStepColumn> EnumeratePSteps(const Instance& inst, int p,
                                         bool time_windows,
                                         const EnumerationBudget& budget) {
  CheckBudget(inst, budget);
  if (p < 1 || p > inst.n + 1) {
    throw std::invalid_argument("step size " + std::to_string(p) +
                                " outside 1.." + std::to_string(inst.n + 1));
  }
  return Enumerator(inst, p, time_windows, budget, false).Run();
}

std::vector<PStepColumn> EnumerateRoutes(const Instance& inst, bool time_windows,
                                         const EnumerationBudget& budget) {
  CheckBudget(inst, budget);
  return Enumerator(inst, inst.n + 1, time_windows, budget, true).Run();
}

ExplicitSolution SolveExplicit(const Instance& inst, int p, bool time_windows,
                               const EnumerationBudget& budget) {
  auto pool = EnumeratePSteps(inst, p, time_windows, budget);
  return SolveMaster(MasterModel::Build(inst, p, std::move(pool), time_windows));
}

double ExplicitBound(const Instance& inst, int p, bool time_windows,
                     const EnumerationBudget& budget) {
  return BoundOrThrow(SolveExplicit(inst, p, time_windows, budget),
                      "explicit master at p=" + std::to_string(p));
}

ExplicitSolution SolveSpLp(const Instance& inst, bool time_windows,
                           const EnumerationBudget& budget) {
  ExplicitSolution out;
  out.pool = EnumerateRoutes(inst, time_windows, budget);
  LinearProgram lp;
  for (int i = 1; i <= inst.n; ++i) {
    lp.AddRow(RowSense::kEqual, 1.0, "part_" + std::to_string(i));
  }
  const int fleet = lp.AddRow(RowSense::kLessEqual, inst.fleet_size, "fleet");
  for (const auto& route : out.pool) {
    LpColumn col;
    col.cost = route.cost;
    col.name = "r_" + PathText(route.path);
    for (int i = 1; i <= inst.n; ++i) {
      if (route.visits[i] != 0.0) col.entries.push_back({i - 1, 1.0});
    }
    col.entries.push_back({fleet, 1.0});
    lp.AddColumn(std::move(col));
  }
  const LpSolution sol = SolveLp(lp);
  out.status = sol.status;
  if (sol.optimal()) {
    out.bound = sol.objective;
    out.lambda = sol.primal;
  }
  return out;
}

double SpLpBound(const Instance& inst, bool time_windows,
                 const EnumerationBudget& budget) {
  return BoundOrThrow(SolveSpLp(inst, time_windows, budget), "route LP");
}

double VfBound(const Instance& inst, bool time_windows) {
  const CompactModel model = BuildVfModel(inst, time_windows);
  const LpSolution sol = SolveLp(model.lp);
  ExplicitSolution wrap;
  wrap.status = sol.status;
  wrap.bound = sol.objective;
  return BoundOrThrow(wrap, "vehicle-flow LP");
}

IntegerSolution IntegerOptimum(const Instance& inst, bool time_windows) {
  const int n = inst.n;
  if (n > 8) throw std::invalid_argument("integer oracle limited to 8 customers");
  const bool tw = time_windows && inst.has_windows();
  const int full = (1 << n) - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Cheapest feasible sequence of every customer subset.
  std::vector<double> route_cost(full + 1, kInf);
  std::vector<std::vector<int>> route_path(full + 1);
  for (int mask = 1; mask <= full; ++mask) {
    std::vector<int> members;
    double demand = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        members.push_back(i + 1);
        demand += inst.demand[i + 1];
      }
    }
    if (demand > inst.capacity + kDemandTol) continue;
    do {
      std::vector<int> path{0};
      path.insert(path.end(), members.begin(), members.end());
      path.push_back(inst.sink());
      double cost = 0.0;
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        cost += inst.cost(path[k], path[k + 1]);
      }
      if (cost >= route_cost[mask]) continue;
      if (tw && EarliestServiceStarts(inst, path).empty()) continue;
      route_cost[mask] = cost;
      route_path[mask] = std::move(path);
    } while (std::next_permutation(members.begin(), members.end()));
  }

  // best[r][mask]: cheapest cover of `mask` by exactly r routes. The route
  // holding the lowest customer of `mask` is split off first.
  const int max_routes = std::min(inst.fleet_size, n);
  std::vector<std::vector<double>> best(max_routes + 1,
                                        std::vector<double>(full + 1, kInf));
  std::vector<std::vector<int>> choice(max_routes + 1,
                                       std::vector<int>(full + 1, 0));
  best[0][0] = 0.0;
  for (int r = 1; r <= max_routes; ++r) {
    for (int mask = 1; mask <= full; ++mask) {
      const int low = mask & -mask;
      const int rest = mask ^ low;
      for (int sub = rest;; sub = (sub - 1) & rest) {
        const int part = sub | low;
        const double c = route_cost[part] + best[r - 1][mask ^ part];
        if (c < best[r][mask]) {
          best[r][mask] = c;
          choice[r][mask] = part;
        }
        if (sub == 0) break;
      }
    }
  }
  IntegerSolution out;
  int best_r = -1;
  if (n == 0) return {true, 0.0, {}};
  for (int r = 1; r <= max_routes; ++r) {
    if (best[r][full] < kInf && (best_r < 0 || best[r][full] < out.value)) {
      best_r = r;
      out.value = best[r][full];
    }
  }
  if (best_r < 0) return out;
  out.feasible = true;
  for (int r = best_r, mask = full; r > 0; --r) {
    const int part = choice[r][mask];
    out.routes.push_back(route_path[part]);
    mask ^= part;
  }
  std::sort(out.routes.begin(), out.routes.end());
  return out;
}

double MinReducedCostBruteForce(const Instance& inst, int p,
                                const DualSolution& duals, bool time_windows,
                                const EnumerationBudget& budget) {
  const bool tw = time_windows && inst.has_windows();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& col : EnumeratePSteps(inst, p, tw, budget)) {
    best = std::min(best, ReducedCost(inst, duals, col, tw));
  }
  return best;
}

std::vector<double> CombineCumulativeLoads(const Instance& inst,
                                           const std::vector<PStepColumn>& routes,
                                           const std::vector<double>& lambda) {
  std::vector<double> phi(inst.num_nodes(), 0.0);
  for (std::size_t s = 0; s < routes.size(); ++s) {
    const auto& path = routes[s].path;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (inst.is_customer(path[k])) {
        phi[path[k]] += lambda[s] * routes[s].cumulative_load[k];
      }
    }
  }
  phi[0] = 0.0;
  phi[inst.sink()] = inst.capacity;
  return phi;
}

std::vector<double> CombineServiceStarts(const Instance& inst,
                                         const std::vector<PStepColumn>& routes,
                                         const std::vector<double>& lambda) {
  if (!inst.has_windows()) {
    throw std::invalid_argument("instance has no time windows");
  }
  std::vector<double> omega(inst.num_nodes(), 0.0);
  for (std::size_t s = 0; s < routes.size(); ++s) {
    const auto starts = EarliestServiceStarts(inst, routes[s].path);
    if (starts.empty()) {
      throw CertificateViolation("route " + PathText(routes[s].path) +
                                 " misses a window");
    }
    const auto& path = routes[s].path;
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (inst.is_customer(path[k])) omega[path[k]] += lambda[s] * starts[k];
    }
  }
  omega[0] = (*inst.windows)[0].open;
  omega[inst.sink()] = (*inst.windows)[inst.sink()].close;
  return omega;
}

std::vector<double> PhiCertificate(const Instance& inst,
                                   const std::vector<PStepColumn>& routes,
                                   const std::vector<double>& lambda) {
  CheckCover(inst, routes, lambda);
  const auto phi = CombineCumulativeLoads(inst, routes, lambda);
  const double tol = kCertTol * std::max(1.0, inst.capacity);
  for (int v = 0; v < inst.num_nodes(); ++v) {
    if (phi[v] < inst.demand[v] - tol || phi[v] > inst.capacity + tol) {
      throw CertificateViolation("load " + std::to_string(phi[v]) +
                                 " at node " + std::to_string(v) +
                                 " leaves [q, Q]");
    }
  }
  const auto flow = ArcFlows(routes, lambda);
  for (int i = 0; i <= inst.n; ++i) {
    for (int j = 1; j <= inst.sink(); ++j) {
      if (!inst.IsLegalArc(i, j)) continue;
      const auto it = flow.find({i, j});
      const double x = it == flow.end() ? 0.0 : it->second;
      const double lhs = phi[i] - phi[j] + (inst.demand[j] + inst.capacity) * x;
      if (lhs > inst.capacity + tol) {
        throw CertificateViolation("load row (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") violated by " +
                                   std::to_string(lhs - inst.capacity));
      }
    }
  }
  return phi;
}

std::vector<double> OmegaCertificate(const Instance& inst,
                                     const std::vector<PStepColumn>& routes,
                                     const std::vector<double>& lambda) {
  CheckCover(inst, routes, lambda);
  const auto omega = CombineServiceStarts(inst, routes, lambda);
  const auto& w = *inst.windows;
  const double tol = kCertTol * std::max(1.0, w[0].close);
  for (int v = 0; v < inst.num_nodes(); ++v) {
    if (omega[v] < w[v].open - tol || omega[v] > w[v].close + tol) {
      throw CertificateViolation("service start at node " + std::to_string(v) +
                                 " leaves its window");
    }
  }
  const auto flow = ArcFlows(routes, lambda);
  for (int i = 0; i <= inst.n; ++i) {
    for (int j = 1; j <= inst.sink(); ++j) {
      if (!inst.IsLegalArc(i, j)) continue;
      const auto it = flow.find({i, j});
      const double x = it == flow.end() ? 0.0 : it->second;
      const double m = inst.BigM(i, j);
      const double lhs =
          omega[i] - omega[j] + (inst.service[i] + inst.time(i, j) + m) * x;
      if (lhs > m + tol) {
        throw CertificateViolation("time row (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") violated");
      }
    }
  }
  return omega;
}

CutResult CutSolution(const Instance& inst, const std::vector<PStepColumn>& pool,
                      const std::vector<double>& lambda, int p,
                      bool time_windows) {
  if (pool.size() != lambda.size()) {
    throw CertificateViolation("pool and weights differ in length");
  }
  std::map<std::vector<int>, double> pieces;
  for (std::size_t s = 0; s < pool.size(); ++s) {
    const auto& path = pool[s].path;
    const int arcs = pool[s].arc_count();
    int lead = arcs % p;
    if (!pool[s].starts_at_depot() && lead != 0) {
      throw CertificateViolation("path " + PathText(path) +
                                 " has an arc count that is not a multiple of " +
                                 std::to_string(p));
    }
    int from = 0;
    if (lead == 0) lead = p;
    for (int to = lead; to <= arcs; to += p) {
      std::vector<int> piece(path.begin() + from, path.begin() + to + 1);
      const PathDefect defect = CheckPath(inst, piece, p, time_windows);
      if (defect != PathDefect::kNone) {
        throw CertificateViolation("piece " + PathText(piece) + ": " +
                                   std::string(ToString(defect)));
      }
      pieces[piece] += lambda[s];
      from = to;
    }
  }

  CutResult out;
  for (auto& [path, w] : pieces) {
    out.columns.push_back(MakeColumn(inst, path));
    out.weights.push_back(w);
  }

  double before = 0.0;
  for (std::size_t s = 0; s < pool.size(); ++s) before += lambda[s] * pool[s].cost;
  for (std::size_t s = 0; s < out.columns.size(); ++s) {
    out.objective += out.weights[s] * out.columns[s].cost;
  }
  const double scale = std::max(1.0, std::abs(before));
  if (std::abs(out.objective - before) > 1e-12 * scale * (1 + pool.size())) {
    throw CertificateViolation("cutting changed the objective from " +
                               std::to_string(before) + " to " +
                               std::to_string(out.objective));
  }
  const auto f0 = ArcFlows(pool, lambda);
  const auto f1 = ArcFlows(out.columns, out.weights);
  for (const auto& [arc, x] : f0) {
    const auto it = f1.find(arc);
    if (it == f1.end() || std::abs(it->second - x) > 1e-12 * (1 + pool.size())) {
      throw CertificateViolation("cutting changed the flow on arc (" +
                                 std::to_string(arc.first) + "," +
                                 std::to_string(arc.second) + ")");
    }
  }
  if (f1.size() != f0.size()) {
    throw CertificateViolation("cutting introduced new arcs");
  }
  auto activity = [&](const std::vector<PStepColumn>& cols,
                      const std::vector<double>& w) {
    std::vector<double> a(2 * inst.num_nodes() + 1, 0.0);
    for (std::size_t s = 0; s < cols.size(); ++s) {
      for (int i = 0; i <= inst.n; ++i) {
        a[i] += w[s] * cols[s].visits[i];
        a[inst.num_nodes() + i] += w[s] * cols[s].endpoint[i];
      }
    }
    return a;
  };
  const auto a0 = activity(pool, lambda);
  const auto a1 = activity(out.columns, out.weights);
  for (std::size_t r = 0; r < a0.size(); ++r) {
    if (std::abs(a0[r] - a1[r]) > 1e-12 * (1 + pool.size())) {
      throw CertificateViolation("cutting changed a partition, flow or fleet "
                                 "activity");
    }
  }
  return out;
}

}  // namespace pstep
