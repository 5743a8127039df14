#include "pstep/formulation.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pstep {
namespace {

constexpr double kDemandTol = 1e-9;

std::string PathString(const std::vector<int>& path) {
  std::string out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k) out += '-';
    out += std::to_string(path[k]);
  }
  return out;
}

double Clamp(double v) { return std::abs(v) < 1e-9 ? 0.0 : v; }
double ClampNonPositive(double v) { return std::min(Clamp(v), 0.0); }

}  // namespace

std::string_view ToString(PathDefect defect) {
  switch (defect) {
    case PathDefect::kNone: return "valid";
    case PathDefect::kTooShort: return "path needs at least one arc";
    case PathDefect::kRepeatedNode: return "elementarity violation";
    case PathDefect::kMisplacedDepot: return "depot copy out of place";
    case PathDefect::kIllegalArc: return "illegal arc";
    case PathDefect::kStepCount: return "step-count violation";
    case PathDefect::kCapacity: return "capacity violation";
    case PathDefect::kTimeWindow: return "time-window violation";
  }
  return "unknown";
}

std::vector<double> EarliestServiceStarts(const Instance& inst,
                                          const std::vector<int>& path) {
  const auto& windows = *inst.windows;
  std::vector<double> start(path.size());
  start[0] = windows[path[0]].open;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const int i = path[k - 1];
    const int j = path[k];
    const double arrival = start[k - 1] + inst.service[i] + inst.time(i, j);
    start[k] = std::max(arrival, windows[j].open);
    if (start[k] > windows[j].close + 1e-9) return {};
  }
  return start;
}

PathDefect CheckPath(const Instance& inst, const std::vector<int>& path, int p,
                     bool time_windows) {
  if (path.size() < 2) return PathDefect::kTooShort;
  const int last = static_cast<int>(path.size()) - 1;
  std::vector<char> seen(inst.num_nodes(), 0);
  for (int k = 0; k <= last; ++k) {
    const int v = path[k];
    if (v < 0 || v > inst.sink()) return PathDefect::kMisplacedDepot;
    if ((v == 0 && k != 0) || (v == inst.sink() && k != last)) {
      return PathDefect::kMisplacedDepot;
    }
    if (seen[v]) return PathDefect::kRepeatedNode;
    seen[v] = 1;
  }
  for (int k = 0; k < last; ++k) {
    if (!inst.IsLegalArc(path[k], path[k + 1])) return PathDefect::kIllegalArc;
  }
  if (last > p || (last < p && path[0] != 0)) return PathDefect::kStepCount;
  double demand = 0.0;
  for (int v : path) demand += inst.demand[v];
  if (demand > inst.capacity + kDemandTol) return PathDefect::kCapacity;
  if (time_windows && inst.has_windows() &&
      EarliestServiceStarts(inst, path).empty()) {
    return PathDefect::kTimeWindow;
  }
  return PathDefect::kNone;
}

PStepColumn MakeColumn(const Instance& inst, std::vector<int> path) {
  PStepColumn col;
  col.visits.assign(inst.n + 1, 0.0);
  col.endpoint.assign(inst.n + 1, 0.0);
  col.cumulative_load.resize(path.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const int v = path[k];
    acc += inst.demand[v];
    col.cumulative_load[k] = acc;
    if (k > 0) {
      col.cost += inst.cost(path[k - 1], v);
      col.load += inst.demand[v];
    }
    if (k + 1 < path.size()) col.visits[v] = 1.0;
  }
  col.endpoint[path.front()] += 1.0;
  if (path.back() != inst.sink()) col.endpoint[path.back()] -= 1.0;
  col.path = std::move(path);
  return col;
}

PStepColumn ColumnFromPath(const Instance& inst, std::vector<int> path, int p,
                           bool time_windows) {
  const PathDefect defect = CheckPath(inst, path, p, time_windows);
  if (defect != PathDefect::kNone) {
    throw ColumnError(defect, std::string(ToString(defect)) + " in path " +
                                  PathString(path) + " (p=" +
                                  std::to_string(p) + ")");
  }
  return MakeColumn(inst, std::move(path));
}

CompactModel BuildVfModel(const Instance& inst, bool time_windows) {
  if (time_windows && !inst.has_windows()) {
    throw ConfigurationError("time-window model requested for instance '" +
                             inst.name + "' without windows");
  }
  const int nodes = inst.num_nodes();
  const int n = inst.n;
  const double cap = inst.capacity;
  CompactModel model;
  model.num_nodes = nodes;
  model.time_windows = time_windows;
  LinearProgram& lp = model.lp;

  std::vector<int> degree_row(nodes, -1), flow_row(nodes, -1);
  for (int i = 1; i <= n; ++i) {
    degree_row[i] = lp.AddRow(RowSense::kEqual, 1.0, "deg_" + std::to_string(i));
  }
  for (int h = 1; h <= n; ++h) {
    flow_row[h] = lp.AddRow(RowSense::kEqual, 0.0, "flow_" + std::to_string(h));
  }
  const int fleet = lp.AddRow(RowSense::kLessEqual, inst.fleet_size, "fleet");
  std::vector<int> load_row(nodes * nodes, -1), time_row(nodes * nodes, -1);
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      if (i == j) continue;
      load_row[i * nodes + j] =
          lp.AddRow(RowSense::kLessEqual, cap,
                    "load_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  if (time_windows) {
    for (int i = 0; i <= n; ++i) {
      for (int j = 1; j < nodes; ++j) {
        if (i == j) continue;
        time_row[i * nodes + j] =
            lp.AddRow(RowSense::kLessEqual, inst.BigM(i, j),
                      "time_" + std::to_string(i) + "_" + std::to_string(j));
      }
    }
  }

  model.x_offset = 0;
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      LpColumn col;
      col.cost = inst.cost(i, j);
      col.upper = 1.0;
      col.name = "x_" + std::to_string(i) + "_" + std::to_string(j);
      if (!inst.IsLegalArc(i, j) ||
          CheckPath(inst, {i, j}, 1, time_windows) != PathDefect::kNone) {
        col.upper = 0.0;
      }
      if (i >= 1 && i <= n && j >= 1 && j != i) {
        col.entries.push_back({degree_row[i], 1.0});
      }
      if (j >= 1 && j <= n && i <= n && i != j) {
        col.entries.push_back({flow_row[j], 1.0});
      }
      if (i >= 1 && i <= n && j >= 1 && j != i) {
        col.entries.push_back({flow_row[i], -1.0});
      }
      if (i == 0 && j >= 1 && j <= n) col.entries.push_back({fleet, 1.0});
      if (i != j) {
        col.entries.push_back({load_row[i * nodes + j], inst.demand[j] + cap});
      }
      if (time_windows && time_row[i * nodes + j] >= 0) {
        col.entries.push_back({time_row[i * nodes + j],
                               inst.service[i] + inst.time(i, j) +
                                   inst.BigM(i, j)});
      }
      lp.AddColumn(std::move(col));
    }
  }
  model.y_offset = lp.num_columns();
  for (int i = 0; i < nodes; ++i) {
    LpColumn col;
    col.lower = inst.demand[i];
    col.upper = cap;
    col.name = "y_" + std::to_string(i);
    for (int j = 0; j < nodes; ++j) {
      if (j == i) continue;
      col.entries.push_back({load_row[i * nodes + j], 1.0});
      col.entries.push_back({load_row[j * nodes + i], -1.0});
    }
    lp.AddColumn(std::move(col));
  }
  if (time_windows) {
    model.w_offset = lp.num_columns();
    for (int i = 0; i < nodes; ++i) {
      LpColumn col;
      col.lower = (*inst.windows)[i].open;
      col.upper = (*inst.windows)[i].close;
      col.name = "w_" + std::to_string(i);
      for (int j = 0; j < nodes; ++j) {
        if (j == i) continue;
        if (time_row[i * nodes + j] >= 0) {
          col.entries.push_back({time_row[i * nodes + j], 1.0});
        }
        if (time_row[j * nodes + i] >= 0) {
          col.entries.push_back({time_row[j * nodes + i], -1.0});
        }
      }
      lp.AddColumn(std::move(col));
    }
  }
  return model;
}

DualSolution DualSolution::Zero(const Instance& inst) {
  DualSolution d;
  d.u1.assign(inst.num_nodes(), 0.0);
  d.u2.assign(inst.num_nodes(), 0.0);
  d.u4 = SquareMatrix(inst.num_nodes());
  d.u5 = SquareMatrix(inst.num_nodes());
  return d;
}

MasterModel MasterModel::Build(const Instance& inst, int p,
                               std::vector<PStepColumn> pool,
                               bool time_windows) {
  if (time_windows && !inst.has_windows()) {
    throw ConfigurationError("time-window master requested for instance '" +
                             inst.name + "' without windows");
  }
  if (p < 1 || p > inst.n + 1) {
    throw PoolError("step size " + std::to_string(p) + " outside 1.." +
                    std::to_string(inst.n + 1));
  }
  MasterModel m;
  m.inst_ = inst;
  m.p_ = p;
  m.time_windows_ = time_windows;
  const int nodes = inst.num_nodes();
  const int n = inst.n;
  m.nodes_ = nodes;
  LinearProgram& lp = m.lp_;

  m.partition_row_.assign(nodes, -1);
  m.flow_row_.assign(nodes, -1);
  for (int i = 1; i <= n; ++i) {
    m.partition_row_[i] =
        lp.AddRow(RowSense::kEqual, 1.0, "part_" + std::to_string(i));
  }
  for (int i = 1; i <= n; ++i) {
    m.flow_row_[i] = lp.AddRow(RowSense::kEqual, 0.0, "flow_" + std::to_string(i));
  }
  m.fleet_row_ = lp.AddRow(RowSense::kLessEqual, inst.fleet_size, "fleet");
  m.load_row_.assign(nodes * nodes, -1);
  m.time_row_.assign(nodes * nodes, -1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 1; j < nodes; ++j) {
      if (!inst.IsLegalArc(i, j)) continue;
      m.load_row_[i * nodes + j] =
          lp.AddRow(RowSense::kLessEqual, inst.capacity,
                    "load_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  if (time_windows) {
    for (int i = 0; i <= n; ++i) {
      for (int j = 1; j < nodes; ++j) {
        if (!inst.IsLegalArc(i, j)) continue;
        m.time_row_[i * nodes + j] =
            lp.AddRow(RowSense::kLessEqual, inst.BigM(i, j),
                      "time_" + std::to_string(i) + "_" + std::to_string(j));
      }
    }
  }

  m.phi_offset_ = lp.num_columns();
  for (int v = 0; v < nodes; ++v) {
    LpColumn col;
    col.lower = inst.demand[v];
    col.upper = inst.capacity;
    col.name = "phi_" + std::to_string(v);
    for (int w = 0; w < nodes; ++w) {
      if (v <= n && m.load_row_[v * nodes + w] >= 0) {
        col.entries.push_back({m.load_row_[v * nodes + w], 1.0});
      }
      if (w <= n && m.load_row_[w * nodes + v] >= 0) {
        col.entries.push_back({m.load_row_[w * nodes + v], -1.0});
      }
    }
    lp.AddColumn(std::move(col));
  }
  if (time_windows) {
    m.omega_offset_ = lp.num_columns();
    for (int v = 0; v < nodes; ++v) {
      LpColumn col;
      col.lower = (*inst.windows)[v].open;
      col.upper = (*inst.windows)[v].close;
      col.name = "omega_" + std::to_string(v);
      for (int w = 0; w < nodes; ++w) {
        if (v <= n && m.time_row_[v * nodes + w] >= 0) {
          col.entries.push_back({m.time_row_[v * nodes + w], 1.0});
        }
        if (w <= n && m.time_row_[w * nodes + v] >= 0) {
          col.entries.push_back({m.time_row_[w * nodes + v], -1.0});
        }
      }
      lp.AddColumn(std::move(col));
    }
  }
  m.AddColumns(std::move(pool));
  return m;
}

LpColumn MasterModel::ColumnFor(const PStepColumn& column) const {
  const Instance& inst = inst_;
  LpColumn col;
  col.cost = column.cost;
  col.name = "lam_" + PathString(column.path);
  for (int i = 1; i <= inst.n; ++i) {
    if (column.visits[i] != 0.0) {
      col.entries.push_back({partition_row_[i], column.visits[i]});
    }
    if (column.endpoint[i] != 0.0) {
      col.entries.push_back({flow_row_[i], column.endpoint[i]});
    }
  }
  if (column.endpoint[0] != 0.0) {
    col.entries.push_back({fleet_row_, column.endpoint[0]});
  }
  for (std::size_t k = 0; k + 1 < column.path.size(); ++k) {
    const int i = column.path[k];
    const int j = column.path[k + 1];
    col.entries.push_back({load_row(i, j), inst.demand[j] + inst.capacity});
    if (time_windows_) {
      col.entries.push_back(
          {time_row(i, j), inst.service[i] + inst.time(i, j) + inst.BigM(i, j)});
    }
  }
  return col;
}

void MasterModel::AppendColumn(PStepColumn column) {
  pool_var_.push_back(lp_.AddColumn(ColumnFor(column)));
  pool_.push_back(std::move(column));
}

void MasterModel::AddColumns(std::vector<PStepColumn> columns) {
  for (auto& column : columns) {
    const PathDefect defect = CheckPath(inst_, column.path, p_, time_windows_);
    if (defect != PathDefect::kNone) {
      throw PoolError(std::string(ToString(defect)) + " for pooled path " +
                      PathString(column.path) + " at p=" + std::to_string(p_));
    }
    AppendColumn(std::move(column));
  }
}

int MasterModel::AddArtificial(int customer, double cost) {
  LpColumn col;
  col.cost = cost;
  col.name = "art_" + std::to_string(customer);
  col.entries.push_back({partition_row_.at(customer), 1.0});
  const int var = lp_.AddColumn(std::move(col));
  artificial_vars_.push_back(var);
  return var;
}

DualSolution ExtractDuals(const MasterModel& model, const LpSolution& solution) {
  if (!solution.optimal()) {
    throw StateError("duals requested from a " + ToString(solution.status) +
                     " master solution");
  }
  const Instance& inst = model.instance();
  const auto& y = solution.row_duals;
  DualSolution d = DualSolution::Zero(inst);
  for (int i = 1; i <= inst.n; ++i) {
    d.u1[i] = Clamp(y[model.partition_row(i)]);
    d.u2[i] = Clamp(y[model.flow_row(i)]);
  }
  d.u3 = ClampNonPositive(y[model.fleet_row()]);
  for (int i = 0; i <= inst.n; ++i) {
    for (int j = 1; j <= inst.sink(); ++j) {
      if (!inst.IsLegalArc(i, j)) continue;
      d.u4(i, j) = ClampNonPositive(y[model.load_row(i, j)]);
      if (model.time_windows()) {
        d.u5(i, j) = ClampNonPositive(y[model.time_row(i, j)]);
      }
    }
  }
  return d;
}

double ArcReducedCost(const Instance& inst, const DualSolution& duals, int i,
                      int j, bool time_windows) {
  double value = inst.cost(i, j) - duals.u1[i] -
                 (inst.demand[j] + inst.capacity) * duals.u4(i, j);
  if (time_windows) {
    value -= (inst.service[i] + inst.time(i, j) + inst.BigM(i, j)) *
             duals.u5(i, j);
  }
  return value;
}

double ReducedCost(const Instance& inst, const DualSolution& duals,
                   const PStepColumn& column, bool time_windows) {
  double rc = 0.0;
  for (std::size_t k = 0; k + 1 < column.path.size(); ++k) {
    rc += ArcReducedCost(inst, duals, column.path[k], column.path[k + 1],
                         time_windows);
  }
  const int first = column.first();
  const int last = column.last();
  if (first != 0) rc -= duals.u2[first];
  if (last != inst.sink()) rc += duals.u2[last];
  if (first == 0) rc -= duals.u3;
  return rc;
}

void WritePool(std::ostream& out, const std::vector<PStepColumn>& pool) {
  for (const auto& col : pool) {
    for (std::size_t k = 0; k < col.path.size(); ++k) {
      if (k) out << ' ';
      out << col.path[k];
    }
    out << '\n';
  }
}

std::vector<std::vector<int>> ReadPaths(std::istream& in) {
  std::vector<std::vector<int>> paths;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream stream(line);
    std::vector<int> path;
    std::string token;
    while (stream >> token) {
      char* end = nullptr;
      const long v = std::strtol(token.c_str(), &end, 10);
      if (end == token.c_str() || *end != '\0') {
        throw ParseError(line_no, "bad node index '" + token + "'");
      }
      path.push_back(static_cast<int>(v));
    }
    if (!path.empty()) paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace pstep
