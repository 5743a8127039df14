#include "pstep/colgen.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "pstep/lp.h"

namespace pstep {
namespace {

using nlohmann::json;

constexpr double kArtificialActive = 1e-7;
constexpr double kLambdaPrint = 1e-9;

MasterModel BuildMaster(const Instance& inst, int p,
                        std::vector<PStepColumn> pool, double artificial_cost,
                        bool tw) {
  MasterModel master = MasterModel::Build(inst, p, {}, tw);
  for (int i = 1; i <= inst.n; ++i) master.AddArtificial(i, artificial_cost);
  master.AddColumns(std::move(pool));
  return master;
}

std::vector<PStepColumn> Deduplicate(std::vector<PStepColumn> pool) {
  std::sort(pool.begin(), pool.end(),
            [](const PStepColumn& a, const PStepColumn& b) { return a.path < b.path; });
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

}  // namespace

std::string ToString(ColGenStatus status) {
  return status == ColGenStatus::kOptimal ? "optimal" : "iteration-limit";
}

double DefaultArtificialCost(const Instance& inst) {
  return (inst.n + 1) * inst.MaxCost() + 1.0;
}

void ValidateConfig(const Instance& inst, const ColGenConfig& cfg) {
  auto check_p = [&](int p, const char* field) {
    if (p < 1 || p > inst.n + 1) {
      throw std::invalid_argument(std::string(field) + ": step size " +
                                  std::to_string(p) + " outside 1.." +
                                  std::to_string(inst.n + 1));
    }
  };
  check_p(cfg.p, "p");
  if (!(cfg.tol >= 0.0)) throw std::invalid_argument("tol: must be >= 0");
  if (cfg.max_iters < 1) throw std::invalid_argument("max_iters: must be >= 1");
  if (cfg.artificial_cost &&
      !(*cfg.artificial_cost > inst.n * inst.MaxCost())) {
    throw std::invalid_argument("artificial_cost: must exceed n * max cost");
  }
  if (cfg.pricing.max_columns_per_round < 1 || cfg.pricing.per_start_best < 1) {
    throw std::invalid_argument("pricing: column caps must be positive");
  }
  if (cfg.pricing.workers < 1) {
    throw std::invalid_argument("pricing: workers must be >= 1");
  }
  int last_iter = 0;
  int last_p = cfg.p;
  for (const auto& [iter, p] : cfg.turning_points) {
    if (iter <= last_iter) {
      throw std::invalid_argument("turning_points: iterations must increase");
    }
    check_p(p, "turning_points");
    if (p <= last_p) {
      throw std::invalid_argument("turning_points: step size must increase");
    }
    last_iter = iter;
    last_p = p;
  }
}

std::vector<PStepColumn> InitialColumns(const Instance& inst, int p,
                                        bool time_windows) {
  std::vector<std::vector<int>> paths;
  for (int i = 1; i <= inst.n; ++i) {
    if (p == 1) {
      paths.push_back({0, i});
      paths.push_back({i, inst.sink()});
    } else {
      paths.push_back({0, i, inst.sink()});
    }
  }
  std::vector<PStepColumn> columns;
  for (auto& path : paths) {
    if (CheckPath(inst, path, p, time_windows) == PathDefect::kNone) {
      columns.push_back(MakeColumn(inst, std::move(path)));
    }
  }
  return columns;
}

std::vector<PStepColumn> TurningPointMerge(const Instance& inst,
                                           const std::vector<PStepColumn>& pool,
                                           int p, int k, bool time_windows) {
  if (k < 1 || p + k > inst.n + 1) {
    throw std::out_of_range("turning point from p=" + std::to_string(p) +
                            " by " + std::to_string(k) + " leaves 1.." +
                            std::to_string(inst.n + 1));
  }
  const int target = p + k;
  std::vector<PStepColumn> merged;
  for (const auto& col : pool) {
    if (CheckPath(inst, col.path, target, time_windows) == PathDefect::kNone) {
      merged.push_back(col);
    }
  }
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      if (a.last() != b.first()) continue;
      std::vector<int> path = a.path;
      path.insert(path.end(), b.path.begin() + 1, b.path.end());
      if (CheckPath(inst, path, target, time_windows) == PathDefect::kNone) {
        merged.push_back(MakeColumn(inst, std::move(path)));
      }
    }
  }
  return Deduplicate(std::move(merged));
}

ColGenResult SolveRelaxation(const Instance& inst, const ColGenConfig& cfg,
                             bool time_windows) {
  ValidateConfig(inst, cfg);
  if (time_windows && !inst.has_windows()) {
    throw ConfigurationError("instance '" + inst.name + "' has no time windows");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const double artificial_cost =
      cfg.artificial_cost.value_or(DefaultArtificialCost(inst));

  int p = cfg.p;
  std::vector<PStepColumn> start = InitialColumns(inst, p, time_windows);
  for (const auto& col : cfg.initial_pool) start.push_back(col);
  MasterModel master =
      BuildMaster(inst, p, Deduplicate(std::move(start)), artificial_cost,
                  time_windows);
  std::set<std::vector<int>> known;
  for (const auto& col : master.pool()) known.insert(col.path);

  PricingConfig pricing = cfg.pricing;
  pricing.tol = cfg.tol;

  ColGenResult result;
  result.instance_name = inst.name;
  result.time_windows = time_windows;
  std::size_t next_turn = 0;
  LpSolution sol;
  Basis basis;
  bool turn_now = false;
  for (int iter = 1;; ++iter) {
    if (next_turn < cfg.turning_points.size() &&
        (turn_now || cfg.turning_points[next_turn].first <= iter)) {
      turn_now = false;
      const int new_p = cfg.turning_points[next_turn++].second;
      auto pool = TurningPointMerge(inst, master.pool(), p, new_p - p, time_windows);
      for (auto& col : InitialColumns(inst, new_p, time_windows)) {
        pool.push_back(std::move(col));
      }
      p = new_p;
      master = BuildMaster(inst, p, Deduplicate(std::move(pool)),
                           artificial_cost, time_windows);
      known.clear();
      for (const auto& col : master.pool()) known.insert(col.path);
      basis = Basis{};
      spdlog::debug("turning point at iteration {}: p={} with {} columns", iter,
                    p, master.pool().size());
    }

    sol = SolveLp(master.lp(), basis.empty() ? nullptr : &basis);
    if (!sol.optimal()) {
      // The artificials make every master feasible and costs are bounded
      // below, so this is a numerical failure.
      throw std::runtime_error("restricted master " + ToString(sol.status) +
                               " at iteration " + std::to_string(iter));
    }
    basis = sol.basis;
    result.iterations = iter;

    const DualSolution duals = ExtractDuals(master, sol);
    PricingResult priced = Price(inst, p, duals, pricing, time_windows);
    result.pricing.labels_created += priced.stats.labels_created;
    result.pricing.labels_dominated += priced.stats.labels_dominated;
    result.pricing.columns_emitted += priced.stats.columns_emitted;
    result.pricing.min_reduced_cost = priced.stats.min_reduced_cost;
    std::vector<PStepColumn> fresh;
    for (auto& pc : priced.columns) {
      if (known.insert(pc.column.path).second) fresh.push_back(std::move(pc.column));
    }
    IterationLog entry;
    entry.iteration = iter;
    entry.p = p;
    entry.objective = sol.objective;
    entry.min_reduced_cost = priced.stats.min_reduced_cost;
    entry.columns_added = static_cast<int>(fresh.size());
    result.log.push_back(entry);
    spdlog::debug("iter {} p={} obj={:.10g} min_rc={:.3g} added={}", iter, p,
                  sol.objective, entry.min_reduced_cost, entry.columns_added);

    if (fresh.empty()) {
      if (!priced.columns.empty()) {
        spdlog::warn("pricing only returned pooled columns at iteration {}",
                     iter);
      }
      // Converged before the schedule ran out: take the next turning point
      // now rather than idling at the current step size.
      if (next_turn < cfg.turning_points.size() && iter < cfg.max_iters) {
        turn_now = true;
        continue;
      }
      result.status = ColGenStatus::kOptimal;
      break;
    }
    if (iter >= cfg.max_iters) {
      result.status = ColGenStatus::kIterationLimit;
      break;
    }
    result.columns_generated += static_cast<int>(fresh.size());
    master.AddColumns(std::move(fresh));
  }

  result.p = p;
  result.bound = sol.objective;
  result.pool = master.pool();
  result.lambda.resize(result.pool.size());
  for (std::size_t s = 0; s < result.pool.size(); ++s) {
    result.lambda[s] = sol.primal[master.pool_var(static_cast<int>(s))];
  }
  for (int v = 0; v < inst.num_nodes(); ++v) {
    result.phi.push_back(sol.primal[master.phi_var(v)]);
    if (time_windows) result.omega.push_back(sol.primal[master.omega_var(v)]);
  }
  for (int var : master.artificial_vars()) {
    if (sol.primal[var] > kArtificialActive) result.infeasible_original = true;
  }
  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return result;
}

json ToJson(const ColGenResult& r, bool include_timing) {
  json j;
  j["instance"] = r.instance_name;
  j["p"] = r.p;
  j["time_windows"] = r.time_windows;
  j["status"] = ToString(r.status);
  j["bound"] = r.bound;
  j["iterations"] = r.iterations;
  j["columns_generated"] = r.columns_generated;
  j["infeasible_original"] = r.infeasible_original;
  if (include_timing) j["wall_ms"] = r.wall_ms;
  json cols = json::array();
  for (std::size_t s = 0; s < r.pool.size(); ++s) {
    if (r.lambda[s] > kLambdaPrint) {
      cols.push_back({{"path", r.pool[s].path}, {"lambda", r.lambda[s]}});
    }
  }
  j["columns"] = cols;
  j["phi"] = r.phi;
  if (r.time_windows) j["omega"] = r.omega;
  json log = json::array();
  for (const auto& e : r.log) {
    log.push_back({{"iteration", e.iteration},
                   {"p", e.p},
                   {"objective", e.objective},
                   {"min_rc", std::isfinite(e.min_reduced_cost)
                                  ? json(e.min_reduced_cost)
                                  : json(nullptr)},
                   {"added", e.columns_added}});
  }
  j["log"] = log;
  j["pricing"] = {{"labels_created", r.pricing.labels_created},
                  {"labels_dominated", r.pricing.labels_dominated},
                  {"columns_emitted", r.pricing.columns_emitted}};
  return j;
}

ColGenResult ColGenResultFromJson(const Instance& inst, const json& j) {
  ColGenResult r;
  r.instance_name = j.at("instance").get<std::string>();
  r.p = j.at("p").get<int>();
  r.time_windows = j.at("time_windows").get<bool>();
  const std::string status = j.at("status").get<std::string>();
  r.status = status == "optimal" ? ColGenStatus::kOptimal
                                 : ColGenStatus::kIterationLimit;
  r.bound = j.at("bound").get<double>();
  r.iterations = j.at("iterations").get<int>();
  r.columns_generated = j.at("columns_generated").get<int>();
  r.infeasible_original = j.at("infeasible_original").get<bool>();
  r.wall_ms = j.value("wall_ms", 0.0);
  for (const auto& c : j.at("columns")) {
    r.pool.push_back(MakeColumn(inst, c.at("path").get<std::vector<int>>()));
    r.lambda.push_back(c.at("lambda").get<double>());
  }
  r.phi = j.at("phi").get<std::vector<double>>();
  if (r.time_windows) r.omega = j.at("omega").get<std::vector<double>>();
  for (const auto& e : j.at("log")) {
    IterationLog entry;
    entry.iteration = e.at("iteration").get<int>();
    entry.p = e.at("p").get<int>();
    entry.objective = e.at("objective").get<double>();
    entry.min_reduced_cost = e.at("min_rc").is_null()
                                 ? std::numeric_limits<double>::infinity()
                                 : e.at("min_rc").get<double>();
    entry.columns_added = e.at("added").get<int>();
    r.log.push_back(entry);
  }
  if (j.contains("pricing")) {
    const auto& ps = j["pricing"];
    r.pricing.labels_created = ps.at("labels_created").get<std::int64_t>();
    r.pricing.labels_dominated = ps.at("labels_dominated").get<std::int64_t>();
    r.pricing.columns_emitted = ps.at("columns_emitted").get<std::int64_t>();
  }
  if (!r.log.empty()) r.pricing.min_reduced_cost = r.log.back().min_reduced_cost;
  return r;
}

}  // namespace pstep
