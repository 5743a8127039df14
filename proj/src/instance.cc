#include "pstep/instance.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

namespace pstep {
namespace {

using nlohmann::json;

int LineOfOffset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(),
                                         text.begin() + offset, '\n'));
}

std::vector<double> ReadVector(const json& value, const std::string& field,
                               std::size_t expected) {
  if (!value.is_array() || value.size() != expected) {
    throw ValidationError(field, "expected an array of length " +
                                     std::to_string(expected));
  }
  std::vector<double> out;
  out.reserve(expected);
  for (const auto& v : value) {
    if (!v.is_number()) throw ValidationError(field, "non-numeric entry");
    out.push_back(v.get<double>());
  }
  return out;
}

SquareMatrix ReadMatrix(const json& value, const std::string& field, int size) {
  if (!value.is_array() || value.size() != static_cast<std::size_t>(size)) {
    throw ValidationError(field, "expected " + std::to_string(size) + " rows");
  }
  SquareMatrix out(size);
  for (int i = 0; i < size; ++i) {
    auto row = ReadVector(value[i], field, size);
    for (int j = 0; j < size; ++j) out(i, j) = row[j];
  }
  return out;
}

double TruncateOneDecimal(double value) {
  return std::floor(value * 10.0 + 1e-9) / 10.0;
}

bool ParseNumbers(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) {
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') return false;
    out.push_back(v);
  }
  return !out.empty();
}

Instance ParseSolomon(std::istream& in) {
  Instance inst;
  std::string line;
  int line_no = 0;
  bool in_vehicle = false;
  bool have_vehicle = false;
  std::vector<double> numbers;
  std::vector<std::vector<double>> rows;
  std::vector<int> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream stream(line);
    std::string first;
    if (!(stream >> first)) continue;
    if (inst.name.empty()) {
      inst.name = first;
      continue;
    }
    if (first == "VEHICLE") {
      in_vehicle = true;
      continue;
    }
    if (first == "CUSTOMER" || first == "NUMBER" || first == "CUST") continue;
    if (!ParseNumbers(line, numbers)) {
      throw ParseError(line_no, "unexpected text '" + first + "'");
    }
    if (in_vehicle && !have_vehicle) {
      if (numbers.size() != 2) {
        throw ParseError(line_no, "expected vehicle NUMBER and CAPACITY");
      }
      inst.fleet_size = static_cast<int>(numbers[0]);
      inst.capacity = numbers[1];
      have_vehicle = true;
      continue;
    }
    if (numbers.size() != 7) {
      throw ParseError(line_no, "expected 7 columns in customer row, got " +
                                    std::to_string(numbers.size()));
    }
    if (static_cast<std::size_t>(numbers[0]) != rows.size()) {
      throw ParseError(line_no, "customer rows must be numbered 0,1,2,...");
    }
    rows.push_back(numbers);
    row_lines.push_back(line_no);
  }
  if (!have_vehicle) throw ParseError(line_no, "missing VEHICLE section");
  if (rows.size() < 2) throw ParseError(line_no, "need a depot and customers");

  const int n = static_cast<int>(rows.size()) - 1;
  inst.n = n;
  const int size = n + 2;
  inst.demand.assign(size, 0.0);
  inst.service.assign(size, 0.0);
  inst.coords.resize(size);
  std::vector<TimeWindow> windows(size);
  for (int i = 0; i <= n; ++i) {
    const auto& r = rows[i];
    inst.coords[i] = {r[1], r[2]};
    inst.demand[i] = r[3];
    windows[i] = {r[4], r[5]};
    inst.service[i] = r[6];
  }
  inst.coords[n + 1] = inst.coords[0];
  inst.demand[n + 1] = 0.0;
  inst.service[n + 1] = 0.0;
  windows[n + 1] = windows[0];
  inst.windows = std::move(windows);
  inst.cost = SquareMatrix(size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (i == j) continue;
      const double dx = inst.coords[i].first - inst.coords[j].first;
      const double dy = inst.coords[i].second - inst.coords[j].second;
      inst.cost(i, j) = TruncateOneDecimal(std::sqrt(dx * dx + dy * dy));
    }
  }
  inst.time = inst.cost;
  return inst;
}

Instance ParseNative(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(LineOfOffset(text, e.byte == 0 ? 0 : e.byte - 1),
                     e.what());
  }
  if (!doc.is_object()) throw ParseError(1, "expected a JSON object");
  for (const char* key : {"n", "Q", "K", "demands", "cost"}) {
    if (!doc.contains(key)) {
      throw ValidationError(key, "missing required key");
    }
  }
  Instance inst;
  inst.name = doc.value("name", std::string("unnamed"));
  if (!doc["n"].is_number_integer() || doc["n"].get<int>() < 1) {
    throw ValidationError("n", "must be a positive integer");
  }
  inst.n = doc["n"].get<int>();
  if (!doc["Q"].is_number()) throw ValidationError("Q", "must be numeric");
  inst.capacity = doc["Q"].get<double>();
  if (!doc["K"].is_number_integer()) {
    throw ValidationError("K", "must be an integer");
  }
  inst.fleet_size = doc["K"].get<int>();
  const int size = inst.num_nodes();
  inst.demand = ReadVector(doc["demands"], "demands", size);
  inst.cost = ReadMatrix(doc["cost"], "cost", size);
  inst.time = doc.contains("time") ? ReadMatrix(doc["time"], "time", size)
                                   : inst.cost;
  inst.service = doc.contains("service")
                     ? ReadVector(doc["service"], "service", size)
                     : std::vector<double>(size, 0.0);
  if (doc.contains("windows") && !doc["windows"].is_null()) {
    const json& w = doc["windows"];
    if (!w.is_array() || w.size() != static_cast<std::size_t>(size)) {
      throw ValidationError("windows", "expected " + std::to_string(size) +
                                           " [open, close] pairs");
    }
    std::vector<TimeWindow> windows;
    for (const auto& pair : w) {
      auto v = ReadVector(pair, "windows", 2);
      windows.push_back({v[0], v[1]});
    }
    inst.windows = std::move(windows);
  }
  return inst;
}

// Cyclic distance between two polygon vertices.
int CyclicSteps(int a, int b, int m) {
  int d = std::abs(a - b) % m;
  return std::min(d, m - d);
}

void ValidateClusterSpec(const ClusterSpec& spec) {
  if (spec.p < 2) throw ValidationError("p", "must be at least 2");
  if (spec.q < 1) throw ValidationError("q", "must be at least 1");
  if (spec.k < 1 || spec.k >= spec.p) {
    throw ValidationError("k", "must satisfy 1 <= k < p");
  }
  if (spec.m < 1) throw ValidationError("m", "must be at least 1");
  if (spec.intra < 0.0 || spec.intra >= spec.edge) {
    throw ValidationError("intra", "must satisfy 0 <= intra < edge");
  }
}

// Builds an instance with `m` clusters of `size` customers on a polygon.
Instance BuildClustered(const ClusterSpec& spec, int size, double depot_dist,
                        std::string name) {
  const int m = spec.m;
  double diameter = 0.0;
  for (int d = 1; d < m; ++d) {
    diameter = std::max(diameter, PolygonChord(m, d, spec.edge));
  }
  if (depot_dist <= diameter || depot_dist <= spec.intra) {
    throw ValidationError("depot_dist",
                          "must exceed every inter-cluster distance");
  }
  Instance inst;
  inst.name = std::move(name);
  inst.n = m * size;
  inst.capacity = inst.n;
  inst.fleet_size = inst.n;
  const int nodes = inst.num_nodes();
  inst.demand.assign(nodes, 1.0);
  inst.demand[0] = inst.demand[inst.sink()] = 0.0;
  inst.service.assign(nodes, 0.0);
  inst.cost = SquareMatrix(nodes);
  auto cluster_of = [size](int node) { return (node - 1) / size; };
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      if (i == j) continue;
      const bool i_depot = !inst.is_customer(i);
      const bool j_depot = !inst.is_customer(j);
      double d;
      if (i_depot && j_depot) {
        d = 0.0;
      } else if (i_depot || j_depot) {
        d = depot_dist;
      } else if (cluster_of(i) == cluster_of(j)) {
        d = spec.intra;
      } else {
        d = PolygonChord(m, CyclicSteps(cluster_of(i), cluster_of(j), m),
                         spec.edge);
      }
      inst.cost(i, j) = d;
    }
  }
  inst.time = inst.cost;
  return inst;
}

}  // namespace

bool SquareMatrix::IsSymmetric(double tol) const {
  for (int i = 0; i < size_; ++i) {
    for (int j = i + 1; j < size_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    }
  }
  return true;
}

double Instance::BigM(int i, int j) const {
  if (!windows) return 0.0;
  return std::max((*windows)[i].close - (*windows)[j].open, 0.0);
}

double Instance::MaxCost() const {
  double best = 0.0;
  for (int i = 0; i < cost.size(); ++i) {
    for (int j = 0; j < cost.size(); ++j) best = std::max(best, cost(i, j));
  }
  return best;
}

void Validate(const Instance& inst) {
  if (inst.n < 1) throw ValidationError("n", "must be at least 1");
  const int size = inst.num_nodes();
  if (inst.fleet_size < 1) throw ValidationError("K", "must be at least 1");
  if (!(inst.capacity > 0.0)) throw ValidationError("Q", "must be positive");
  if (static_cast<int>(inst.demand.size()) != size) {
    throw ValidationError("demands", "expected n+2 entries");
  }
  if (inst.demand[0] != 0.0 || inst.demand[inst.sink()] != 0.0) {
    throw ValidationError("demands", "depot demand must be zero");
  }
  for (int i = 1; i <= inst.n; ++i) {
    if (!(inst.demand[i] > 0.0)) {
      throw ValidationError("demands", "customer " + std::to_string(i) +
                                           " must have positive demand");
    }
    if (inst.demand[i] > inst.capacity) {
      throw ValidationError("demands", "customer " + std::to_string(i) +
                                           " exceeds capacity Q");
    }
  }
  for (const auto* m : {&inst.cost, &inst.time}) {
    const std::string field = m == &inst.cost ? "cost" : "time";
    if (m->size() != size) throw ValidationError(field, "expected (n+2)^2");
    for (int i = 0; i < size; ++i) {
      if ((*m)(i, i) != 0.0) {
        throw ValidationError(field, "diagonal must be zero");
      }
      for (int j = 0; j < size; ++j) {
        if (!std::isfinite((*m)(i, j)) || (*m)(i, j) < 0.0) {
          throw ValidationError(field, "entries must be finite and >= 0");
        }
      }
    }
  }
  if (static_cast<int>(inst.service.size()) != size) {
    throw ValidationError("service", "expected n+2 entries");
  }
  for (double s : inst.service) {
    if (s < 0.0) throw ValidationError("service", "must be nonnegative");
  }
  if (inst.windows) {
    if (static_cast<int>(inst.windows->size()) != size) {
      throw ValidationError("windows", "expected n+2 entries");
    }
    for (const auto& w : *inst.windows) {
      if (w.open > w.close) throw ValidationError("windows", "open > close");
    }
  }
}

Instance ParseInstance(std::istream& in, InstanceFormat format) {
  Instance inst = format == InstanceFormat::kNative ? ParseNative(in)
                                                    : ParseSolomon(in);
  Validate(inst);
  return inst;
}

Instance ParseInstance(const std::string& text, InstanceFormat format) {
  std::istringstream in(text);
  return ParseInstance(in, format);
}

Instance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  InstanceFormat format = InstanceFormat::kSolomon;
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".json") {
    format = InstanceFormat::kNative;
  } else if (ext != ".txt") {
    in >> std::ws;
    if (in.peek() == '{') format = InstanceFormat::kNative;
  }
  return ParseInstance(in, format);
}

std::string ToNativeJson(const Instance& inst) {
  json doc;
  doc["name"] = inst.name;
  doc["n"] = inst.n;
  doc["Q"] = inst.capacity;
  doc["K"] = inst.fleet_size;
  doc["demands"] = inst.demand;
  auto matrix = [](const SquareMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  doc["cost"] = matrix(inst.cost);
  doc["time"] = matrix(inst.time);
  doc["service"] = inst.service;
  if (inst.windows) {
    json w = json::array();
    for (const auto& tw : *inst.windows) w.push_back({tw.open, tw.close});
    doc["windows"] = std::move(w);
  }
  return doc.dump(1) + "\n";
}

double PolygonChord(int m, int steps, double edge) {
  if (steps == 0) return 0.0;
  if (m <= 2) return edge;
  const double pi = std::numbers::pi;
  return edge * std::sin(pi * steps / m) / std::sin(pi / m);
}

Instance GenerateShortClusters(const ClusterSpec& spec) {
  ValidateClusterSpec(spec);
  if (spec.m != spec.q + 1) {
    throw ValidationError("m", "short-cluster layout requires m = q+1");
  }
  double diameter = 0.0;
  for (int d = 1; d < spec.m; ++d) {
    diameter = std::max(diameter, PolygonChord(spec.m, d, spec.edge));
  }
  const double depot = spec.depot_dist.value_or(2.0 * diameter + 1.0);
  return BuildClustered(spec, spec.p, depot,
                        "short-clusters-p" + std::to_string(spec.p) + "-q" +
                            std::to_string(spec.q) + "-k" +
                            std::to_string(spec.k));
}

Instance GenerateWideClusters(const ClusterSpec& spec) {
  ValidateClusterSpec(spec);
  if (spec.m * (spec.p + 1) < spec.p_prime()) {
    throw ValidationError("m", "need m*(p+1) >= q*p+k customers");
  }
  const double depot = spec.depot_dist.value_or(10.0);
  return BuildClustered(spec, spec.p + 1, depot,
                        "wide-clusters-p" + std::to_string(spec.p) + "-q" +
                            std::to_string(spec.q) + "-k" +
                            std::to_string(spec.k) + "-m" +
                            std::to_string(spec.m));
}

Instance GenerateRandom(const RandomSpec& spec) {
  if (spec.n < 1) throw ValidationError("n", "must be at least 1");
  if (!(spec.tightness > 0.0)) {
    throw ValidationError("tightness", "must be positive");
  }
  std::mt19937_64 rng(spec.seed);
  auto uniform_int = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  Instance inst;
  inst.name = "random-n" + std::to_string(spec.n) + "-s" +
              std::to_string(spec.seed) + (spec.time_windows ? "-tw" : "");
  inst.n = spec.n;
  inst.fleet_size = spec.n;
  const int size = inst.num_nodes();

  // Demands are drawn from [1, ceil(Q/3)], so a route holds about
  // 2Q / (1 + ceil(Q/3)) customers; pick Q closest to the target length.
  const double target = 1.0 / spec.tightness;
  int best_q = 2;
  double best_gap = 1e300;
  for (int q = 2; q <= 100; ++q) {
    const double len = 2.0 * q / (1.0 + (q + 2) / 3);
    const double gap = std::abs(len - target);
    if (gap <= best_gap + 1e-12) {
      best_gap = gap;
      best_q = q;
    }
  }
  inst.capacity = best_q;
  const int max_demand = (best_q + 2) / 3;

  inst.coords.resize(size);
  for (int i = 0; i <= spec.n; ++i) {
    inst.coords[i] = {static_cast<double>(uniform_int(0, 100)),
                      static_cast<double>(uniform_int(0, 100))};
  }
  inst.coords[inst.sink()] = inst.coords[0];
  inst.demand.assign(size, 0.0);
  for (int i = 1; i <= spec.n; ++i) inst.demand[i] = uniform_int(1, max_demand);

  inst.cost = SquareMatrix(size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (i == j) continue;
      const double dx = inst.coords[i].first - inst.coords[j].first;
      const double dy = inst.coords[i].second - inst.coords[j].second;
      inst.cost(i, j) = std::sqrt(dx * dx + dy * dy);
    }
  }
  inst.time = inst.cost;
  inst.service.assign(size, 0.0);

  if (spec.time_windows) {
    constexpr double kService = 5.0;
    constexpr int kMaxSlack = 40;
    for (int i = 1; i <= spec.n; ++i) inst.service[i] = kService;
    double horizon = 0.0;
    for (int i = 1; i <= spec.n; ++i) {
      horizon = std::max(horizon, inst.time(0, i) + kMaxSlack + kService +
                                      inst.time(i, inst.sink()));
    }
    horizon = std::ceil(horizon) + 1.0;
    std::vector<TimeWindow> windows(size);
    windows[0] = windows[inst.sink()] = {0.0, horizon};
    for (int i = 1; i <= spec.n; ++i) {
      const double reach = inst.time(0, i);
      const double before = uniform_int(0, kMaxSlack);
      const double after = uniform_int(0, kMaxSlack);
      windows[i] = {std::max(0.0, std::floor(reach - before)),
                    std::min(reach + after, horizon - kService -
                                                inst.time(i, inst.sink()))};
    }
    inst.windows = std::move(windows);
  }
  Validate(inst);
  return inst;
}

}  // namespace pstep
