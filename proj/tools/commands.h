#ifndef PSTEP_TOOLS_COMMANDS_H_
#define PSTEP_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace pstep::cli {

enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kInfeasible = 2,
  kCheckFailed = 3,
  kUsage = 64,
};

// Bad arguments or unreadable inputs; mapped to kUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveArgs {
  std::string instance;
  int p = 1;
  bool tw = false;
  std::string mode = "colgen";
  std::string out;
  std::string pool_in;
  std::string pool_out;
  std::string turning;  // "iter:p,iter:p"
  int max_iters = 10000;
  int workers = 1;
  bool timing = true;
};

struct SweepArgs {
  std::string instance;
  std::string p_list;
  bool tw = false;
  std::string mode = "colgen";
  std::string out;
  int workers = 1;
  bool timing = true;
};

struct GenerateArgs {
  std::string kind;
  int p = 2;
  int q = 1;
  int k = 1;
  int m = 0;  // 0: the generator's default
  int n = 6;
  std::uint64_t seed = 1;
  bool tw = false;
  double tightness = 0.25;
  std::optional<double> depot_dist;
  std::string out;
};

struct ValidateArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
  int n_min = 4;
  int n_max = 8;
  int instances = 20;
  bool tw = false;
  int workers = 1;
};

int RunSolve(const SolveArgs& args, std::ostream& out);
int RunSweep(const SweepArgs& args, std::ostream& out);
int RunGenerate(const GenerateArgs& args, std::ostream& out);
int RunValidate(const ValidateArgs& args, std::ostream& out);
int RunShow(const std::string& path, std::ostream& out);

// Table printers shared by the producing commands and `show`, so a result
// file re-prints byte for byte.
void PrintSolveTable(const nlohmann::json& result, std::ostream& out);
void PrintSweepTable(const nlohmann::json& report, std::ostream& out);

// Parses "1,2,5" and checks each entry lies in 1..max_p.
std::vector<int> ParsePList(const std::string& text, int max_p);

}  // namespace pstep::cli

#endif  // PSTEP_TOOLS_COMMANDS_H_
