#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "pstep/colgen.h"
#include "pstep/formulation.h"
#include "pstep/instance.h"
#include "pstep/lp.h"
#include "pstep/oracle.h"
#include "pstep/validation.h"

namespace pstep::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kOrderTol = 1e-6;

double MsSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Instance LoadOrUsage(const std::string& path) {
  if (!std::ifstream(path)) throw UsageError("cannot read " + path);
  try {
    return LoadInstance(path);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

void CheckP(const Instance& inst, int p) {
  if (p < 1 || p > inst.n + 1) {
    throw UsageError("p must lie in 1.." + std::to_string(inst.n + 1) +
                     " for this instance, got " + std::to_string(p));
  }
}

std::vector<std::pair<int, int>> ParseTurning(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw UsageError("turning point '" + item + "' is not iter:p");
    }
    try {
      out.emplace_back(std::stoi(item.substr(0, colon)),
                       std::stoi(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw UsageError("turning point '" + item + "' is not iter:p");
    }
  }
  return out;
}

json ColumnsJson(const std::vector<PStepColumn>& pool,
                 const std::vector<double>& lambda) {
  json cols = json::array();
  for (std::size_t s = 0; s < pool.size(); ++s) {
    if (lambda[s] > 1e-9) {
      cols.push_back({{"path", pool[s].path}, {"lambda", lambda[s]}});
    }
  }
  return cols;
}

// One solve in the requested mode, as a result-file object.
json SolveOnce(const Instance& inst, int p, const std::string& mode, bool tw,
               const ColGenConfig& base, bool timing,
               std::vector<PStepColumn>* final_pool) {
  const auto t0 = Clock::now();
  json j;
  if (mode == "colgen") {
    ColGenConfig cfg = base;
    cfg.p = p;
    const ColGenResult r = SolveRelaxation(inst, cfg, tw);
    j = ToJson(r, false);
    j["pool_size"] = r.pool.size();
    if (r.infeasible_original) j["status"] = "infeasible";
    if (final_pool) *final_pool = r.pool;
  } else if (mode == "explicit") {
    const ExplicitSolution sol = SolveExplicit(inst, p, tw);
    j["instance"] = inst.name;
    j["p"] = p;
    j["time_windows"] = tw;
    j["status"] = sol.status == LpStatus::kOptimal ? "optimal"
                  : sol.status == LpStatus::kInfeasible ? "infeasible"
                                                        : ToString(sol.status);
    j["bound"] = sol.status == LpStatus::kOptimal ? json(sol.bound) : json(nullptr);
    j["iterations"] = 1;
    j["pool_size"] = sol.pool.size();
    if (sol.status == LpStatus::kOptimal) {
      j["columns"] = ColumnsJson(sol.pool, sol.lambda);
      j["phi"] = sol.phi;
      if (tw) j["omega"] = sol.omega;
    }
    if (final_pool) *final_pool = sol.pool;
  } else if (mode == "vf") {
    if (p != 1) throw UsageError("--mode vf is the one-step model; use --p 1");
    const CompactModel model = BuildVfModel(inst, tw);
    const LpSolution sol = SolveLp(model.lp);
    j["instance"] = inst.name;
    j["p"] = 1;
    j["time_windows"] = tw;
    j["status"] = sol.optimal() ? "optimal"
                  : sol.status == LpStatus::kInfeasible ? "infeasible"
                                                        : ToString(sol.status);
    j["bound"] = sol.optimal() ? json(sol.objective) : json(nullptr);
    j["iterations"] = sol.iterations;
    if (sol.optimal()) {
      json arcs = json::array();
      for (int a = 0; a < inst.num_nodes(); ++a) {
        for (int b = 0; b < inst.num_nodes(); ++b) {
          const double x = sol.primal[model.x(a, b)];
          if (x > 1e-9) arcs.push_back({{"i", a}, {"j", b}, {"x", x}});
        }
      }
      j["arcs"] = arcs;
    }
  } else {
    throw UsageError("unknown mode '" + mode + "'");
  }
  j["mode"] = mode;
  if (timing) j["wall_ms"] = MsSince(t0);
  return j;
}

std::string FormatBound(const json& v) {
  if (v.is_null()) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v.get<double>());
  return buf;
}

std::string FormatMs(const json& row) {
  if (!row.contains("wall_ms")) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", row["wall_ms"].get<double>());
  return buf;
}

struct Flags {
  std::vector<std::string> violations;
  std::map<int, std::vector<std::string>> per_p;
};

// Orderings that must hold: nested step sizes, the one-step floor and the
// full-route ceiling. Drops between non-nested step sizes are reported but
// allowed.
Flags OrderingFlags(const std::map<int, double>& z, int top) {
  Flags f;
  auto below = [](double a, double b) {
    return a < b - kOrderTol * std::max(1.0, std::abs(b));
  };
  for (const auto& [p, zp] : z) {
    for (const auto& [pp, zpp] : z) {
      if (pp <= p || !below(zpp, zp)) continue;
      if (p == 1) {
        const std::string msg = "VIOLATION floor at p=" + std::to_string(pp);
        f.per_p[pp].push_back(msg);
        f.violations.push_back(msg);
      } else if (pp % p == 0) {
        const std::string msg =
            "VIOLATION nested " + std::to_string(p) + "|" + std::to_string(pp);
        f.per_p[pp].push_back(msg);
        f.violations.push_back(msg);
      } else if (pp == top) {
        const std::string msg = "VIOLATION ceiling at p=" + std::to_string(p);
        f.per_p[p].push_back(msg);
        f.violations.push_back(msg);
      } else {
        f.per_p[pp].push_back("reversal below p=" + std::to_string(p));
      }
    }
  }
  return f;
}

}  // namespace

std::vector<int> ParsePList(const std::string& text, int max_p) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int p = 0;
    try {
      std::size_t used = 0;
      p = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("p-list entry '" + item + "' is not an integer");
    }
    if (p < 1 || p > max_p) {
      throw UsageError("p-list entry " + std::to_string(p) + " outside 1.." +
                       std::to_string(max_p));
    }
    out.push_back(p);
  }
  if (out.empty()) throw UsageError("empty p-list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void PrintSolveTable(const json& r, std::ostream& out) {
  out << "instance " << r.at("instance").get<std::string>() << "  mode "
      << r.at("mode").get<std::string>() << "  p " << r.at("p").get<int>()
      << "  time windows " << (r.at("time_windows").get<bool>() ? "yes" : "no")
      << "\n";
  out << "status " << r.at("status").get<std::string>() << "  bound "
      << FormatBound(r.at("bound")) << "  iterations "
      << r.value("iterations", 0);
  if (r.contains("pool_size")) out << "  columns " << r["pool_size"].get<int>();
  out << "  ms " << FormatMs(r) << "\n";
  if (r.contains("pricing")) {
    const auto& ps = r["pricing"];
    out << "labels created " << ps.at("labels_created").get<long long>()
        << "  dominated " << ps.at("labels_dominated").get<long long>()
        << "  columns emitted " << ps.at("columns_emitted").get<long long>()
        << "\n";
  }
  if (r.contains("columns")) {
    for (const auto& c : r["columns"]) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%10.6f ", c.at("lambda").get<double>());
      out << "  " << buf;
      bool first = true;
      for (int v : c.at("path")) {
        out << (first ? "" : "-") << v;
        first = false;
      }
      out << "\n";
    }
  }
}

void PrintSweepTable(const json& report, std::ostream& out) {
  out << "instance " << report.at("instance").get<std::string>() << "  mode "
      << report.at("mode").get<std::string>() << "  time windows "
      << (report.at("time_windows").get<bool>() ? "yes" : "no") << "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%4s %16s %8s %8s %10s  %s\n", "p", "bound",
                "iters", "columns", "ms", "flags");
  out << buf;
  for (const auto& row : report.at("rows")) {
    std::string flags;
    for (const auto& f : row.at("flags")) {
      flags += (flags.empty() ? "" : "; ") + f.get<std::string>();
    }
    std::snprintf(buf, sizeof buf, "%4d %16s %8d %8d %10s  %s\n",
                  row.at("p").get<int>(), FormatBound(row.at("bound")).c_str(),
                  row.at("iterations").get<int>(), row.at("columns").get<int>(),
                  FormatMs(row).c_str(), flags.c_str());
    out << buf;
  }
  const auto& v = report.at("violations");
  out << (v.empty() ? "orderings hold\n"
                    : std::to_string(v.size()) + " ordering violation(s)\n");
}

int RunSolve(const SolveArgs& a, std::ostream& out) {
  const Instance inst = LoadOrUsage(a.instance);
  CheckP(inst, a.p);
  if (a.tw && !inst.has_windows()) {
    throw UsageError("--tw given but " + a.instance + " has no time windows");
  }
  ColGenConfig cfg;
  cfg.max_iters = a.max_iters;
  cfg.pricing.workers = a.workers;
  if (!a.turning.empty()) cfg.turning_points = ParseTurning(a.turning);
  if (!a.pool_in.empty()) {
    if (a.mode != "colgen") throw UsageError("--pool-in needs --mode colgen");
    std::ifstream f(a.pool_in);
    if (!f) throw UsageError("cannot read " + a.pool_in);
    try {
      for (auto& path : ReadPaths(f)) {
        cfg.initial_pool.push_back(ColumnFromPath(inst, std::move(path), a.p, a.tw));
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(a.pool_in + ": " + e.what());
    }
  }
  std::vector<PStepColumn> pool;
  json result;
  try {
    result = SolveOnce(inst, a.p, a.mode, a.tw, cfg, a.timing, &pool);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  PrintSolveTable(result, out);
  if (!a.out.empty()) WriteFile(a.out, Dump(result));
  if (!a.pool_out.empty()) {
    std::ostringstream os;
    WritePool(os, pool);
    WriteFile(a.pool_out, os.str());
  }
  return result.at("status") == "optimal" ? kOk
         : result.at("status") == "infeasible" ? kInfeasible
                                                : kError;
}

int RunSweep(const SweepArgs& a, std::ostream& out) {
  const Instance inst = LoadOrUsage(a.instance);
  if (a.mode != "colgen" && a.mode != "explicit") {
    throw UsageError("sweep mode must be colgen or explicit");
  }
  if (a.tw && !inst.has_windows()) {
    throw UsageError("--tw given but " + a.instance + " has no time windows");
  }
  std::vector<int> ps;
  if (a.p_list.empty()) {
    for (int p = 1; p <= inst.n + 1; ++p) ps.push_back(p);
  } else {
    ps = ParsePList(a.p_list, inst.n + 1);
  }
  ColGenConfig cfg;
  cfg.pricing.workers = a.workers;

  json rows = json::array();
  std::map<int, double> z;
  bool infeasible = false;
  for (int p : ps) {
    const json r = SolveOnce(inst, p, a.mode, a.tw, cfg, a.timing, nullptr);
    json row;
    row["p"] = p;
    row["bound"] = r.at("bound");
    row["status"] = r.at("status");
    row["iterations"] = r.at("iterations");
    row["columns"] = r.at("pool_size");
    if (a.timing) row["wall_ms"] = r.at("wall_ms");
    rows.push_back(row);
    if (r.at("status") == "optimal") {
      z[p] = r.at("bound").get<double>();
    } else {
      infeasible = true;
    }
  }
  const Flags flags = OrderingFlags(z, inst.n + 1);
  for (auto& row : rows) {
    const auto it = flags.per_p.find(row["p"].get<int>());
    row["flags"] = it == flags.per_p.end() ? json::array() : json(it->second);
  }
  json report;
  report["instance"] = inst.name;
  report["mode"] = a.mode;
  report["time_windows"] = a.tw;
  report["tolerance"] = kOrderTol;
  report["rows"] = rows;
  report["violations"] = flags.violations;

  PrintSweepTable(report, out);
  if (!a.out.empty()) WriteFile(a.out, Dump(report));
  if (!flags.violations.empty()) return kCheckFailed;
  return infeasible ? kInfeasible : kOk;
}

int RunGenerate(const GenerateArgs& a, std::ostream& out) {
  Instance inst;
  try {
    if (a.kind == "short-clusters") {
      ClusterSpec spec{a.p, a.q, a.k, a.m > 0 ? a.m : a.q + 1, 0.0, 1.0,
                       a.depot_dist};
      inst = GenerateShortClusters(spec);
    } else if (a.kind == "wide-clusters") {
      ClusterSpec spec{a.p, a.q, a.k, a.m > 0 ? a.m : 2, 0.0, 1.0, a.depot_dist};
      inst = GenerateWideClusters(spec);
    } else if (a.kind == "random") {
      inst = GenerateRandom({a.n, a.seed, a.tw, a.tightness});
    } else {
      throw UsageError("unknown kind '" + a.kind + "'");
    }
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  const std::string text = ToNativeJson(inst);
  if (a.out.empty()) {
    out << text;
  } else {
    WriteFile(a.out, text);
    out << "wrote " << inst.name << " (n=" << inst.n << ") to " << a.out << "\n";
  }
  return kOk;
}

int RunValidate(const ValidateArgs& a, std::ostream& out) {
  ValidationOptions opt;
  opt.seed = a.seed;
  opt.n_min = std::min(a.n_min, a.n_max);
  opt.n_max = a.n_max;
  opt.instances = a.instances;
  opt.time_windows = a.tw;
  opt.workers = a.workers;
  if (a.n_max > 8) throw UsageError("--n-max is limited to 8 (enumeration oracles)");
  int failed = 0;
  int total = 0;
  try {
    RunSuite(a.suite, opt, [&](const Check& c) {
      ++total;
      if (!c.passed) ++failed;
      out << (c.passed ? "PASS " : "FAIL ") << c.suite << ": " << c.name
          << "  [" << c.detail << "]" << std::endl;
    });
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out << total - failed << "/" << total << " checks passed\n";
  return failed == 0 ? kOk : kCheckFailed;
}

int RunShow(const std::string& path, std::ostream& out) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (j.contains("rows")) {
    PrintSweepTable(j, out);
  } else {
    PrintSolveTable(j, out);
  }
  return kOk;
}

}  // namespace pstep::cli
