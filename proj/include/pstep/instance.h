#ifndef PSTEP_INSTANCE_H_
#define PSTEP_INSTANCE_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pstep {

// Dense row-major square matrix indexed by node.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int size, double fill = 0.0)
      : size_(size), data_(static_cast<std::size_t>(size) * size, fill) {}

  int size() const { return size_; }
  double operator()(int i, int j) const { return data_[Offset(i, j)]; }
  double& operator()(int i, int j) { return data_[Offset(i, j)]; }

  bool IsSymmetric(double tol = 0.0) const;
  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t Offset(int i, int j) const {
    return static_cast<std::size_t>(i) * size_ + j;
  }

  int size_ = 0;
  std::vector<double> data_;
};

struct TimeWindow {
  double open = 0.0;
  double close = 0.0;
  bool operator==(const TimeWindow&) const = default;
};

// A single-depot routing instance. The depot is duplicated: node 0 is the
// origin of every route and node n+1 its terminus; customers are 1..n.
struct Instance {
  std::string name;
  int n = 0;
  double capacity = 0.0;  // Q
  int fleet_size = 1;     // K
  std::vector<double> demand;   // n+2 entries, zero at both depot copies
  SquareMatrix cost;
  SquareMatrix time;
  std::vector<double> service;  // n+2 entries
  std::optional<std::vector<TimeWindow>> windows;
  // Coordinates are kept only for generated or Solomon instances.
  std::vector<std::pair<double, double>> coords;

  int num_nodes() const { return n + 2; }
  int sink() const { return n + 1; }
  bool has_windows() const { return windows.has_value(); }
  bool is_customer(int node) const { return node >= 1 && node <= n; }

  // Big-M for the service-start propagation rows: max{close_i - open_j, 0}.
  double BigM(int i, int j) const;

  // Legal arcs exclude self loops, arcs into 0, arcs out of n+1 and the
  // empty route 0 -> n+1.
  bool IsLegalArc(int i, int j) const {
    return i != j && i != sink() && j != 0 && !(i == 0 && j == sink());
  }
  int NumLegalArcs() const { return n * (n + 1); }

  double MaxCost() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Throws ValidationError naming the first offending field.
void Validate(const Instance& instance);

enum class InstanceFormat { kNative, kSolomon };

Instance ParseInstance(std::istream& in, InstanceFormat format);
Instance ParseInstance(const std::string& text, InstanceFormat format);
Instance LoadInstance(const std::string& path);  // format from extension
std::string ToNativeJson(const Instance& instance);

// Parameters of the clustered counterexample generators. A cluster layout
// places groups of customers on the vertices of a regular polygon with unit
// edge length and a depot at equal distance from every customer.
struct ClusterSpec {
  int p = 2;
  int q = 1;
  int k = 1;
  int m = 2;  // cluster count
  double intra = 0.0;
  double edge = 1.0;
  std::optional<double> depot_dist;

  int p_prime() const { return q * p + k; }
};

// Distance between two vertices of a regular m-gon with the given edge
// length, `steps` positions apart.
double PolygonChord(int m, int steps, double edge);

// m = q+1 clusters of p customers each. The (q*p+k)-step relaxation is
// strictly weaker than the p-step one on this layout.
Instance GenerateShortClusters(const ClusterSpec& spec);

// m clusters of p+1 customers each. The p-step relaxation admits a zero-cost
// solution while every (q*p+k)-step costs at least one edge.
Instance GenerateWideClusters(const ClusterSpec& spec);

struct RandomSpec {
  int n = 6;
  std::uint64_t seed = 1;
  bool time_windows = false;
  double tightness = 0.25;  // ~ inverse of customers per route
};

Instance GenerateRandom(const RandomSpec& spec);

}  // namespace pstep

#endif  // PSTEP_INSTANCE_H_
