// pstep: solve, sweep, generate and validate p-step relaxations.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "commands.h"

namespace {

void ConfigureLogging() {
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  const char* env = std::getenv("PSTEP_LOG");
  if (env == nullptr) return;
  const std::string level = env;
  if (level == "quiet") {
    spdlog::set_level(spdlog::level::off);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (level != "info") {
    spdlog::warn("PSTEP_LOG={} not one of quiet, info, debug", level);
  }
}

int DefaultWorkers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pstep::cli;
  ConfigureLogging();

  CLI::App app{"p-step vehicle-routing relaxations"};
  app.require_subcommand(1);

  SolveArgs solve;
  solve.workers = DefaultWorkers();
  auto* s = app.add_subcommand("solve", "solve one relaxation");
  s->add_option("--instance", solve.instance, "instance file (.json or Solomon .txt)")->required();
  s->add_option("--p", solve.p, "step size, 1..n+1")->required();
  s->add_flag("--tw", solve.tw, "enforce time windows");
  s->add_option("--mode", solve.mode, "colgen, explicit or vf")
      ->check(CLI::IsMember({"colgen", "explicit", "vf"}));
  s->add_option("--out", solve.out, "result file");
  s->add_option("--pool-in", solve.pool_in, "extra starting columns, one path per line");
  s->add_option("--pool-out", solve.pool_out, "write the final pool");
  s->add_option("--turning", solve.turning, "step-size schedule iter:p,iter:p");
  s->add_option("--max-iters", solve.max_iters, "column generation iteration cap")
      ->check(CLI::PositiveNumber);
  s->add_option("--workers", solve.workers, "pricing threads")->check(CLI::PositiveNumber);
  s->add_flag("!--no-timing", solve.timing, "leave wall times out of the result file");

  SweepArgs sweep;
  sweep.workers = DefaultWorkers();
  auto* w = app.add_subcommand("sweep", "solve across step sizes and check orderings");
  w->add_option("--instance", sweep.instance, "instance file")->required();
  w->add_option("--p-list", sweep.p_list, "comma-separated step sizes, default 1..n+1");
  w->add_flag("--tw", sweep.tw, "enforce time windows");
  w->add_option("--mode", sweep.mode, "colgen or explicit")
      ->check(CLI::IsMember({"colgen", "explicit"}));
  w->add_option("--out", sweep.out, "report file");
  w->add_option("--workers", sweep.workers, "pricing threads")->check(CLI::PositiveNumber);
  w->add_flag("!--no-timing", sweep.timing, "leave wall times out of the report");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write an instance file");
  g->add_option("--kind", gen.kind, "short-clusters, wide-clusters or random")->required();
  g->add_option("--p", gen.p, "cluster layouts: step size");
  g->add_option("--q", gen.q, "cluster layouts: multiplier");
  g->add_option("--k", gen.k, "cluster layouts: offset");
  g->add_option("--m", gen.m, "cluster layouts: cluster count");
  g->add_option("--depot-dist", gen.depot_dist, "cluster layouts: depot distance");
  g->add_option("--n", gen.n, "random: customers");
  g->add_option("--seed", gen.seed, "random: seed");
  g->add_flag("--tw", gen.tw, "random: add time windows");
  g->add_option("--tightness", gen.tightness, "random: capacity tightness");
  g->add_option("--out", gen.out, "output file, stdout if omitted");

  ValidateArgs val;
  val.workers = DefaultWorkers();
  auto* v = app.add_subcommand("validate", "run the oracle suites");
  v->add_option("--suite", val.suite, "equivalence, orderings, pricing, certificates or all")
      ->check(CLI::IsMember({"equivalence", "orderings", "pricing", "certificates", "all"}));
  v->add_option("--seed", val.seed, "first corpus seed");
  v->add_option("--n-min", val.n_min, "smallest corpus instance")->check(CLI::PositiveNumber);
  v->add_option("--n-max", val.n_max, "largest corpus instance")->check(CLI::PositiveNumber);
  v->add_option("--instances", val.instances, "corpus size")->check(CLI::PositiveNumber);
  v->add_flag("--tw", val.tw, "time-window corpus");
  v->add_option("--workers", val.workers, "pricing threads")->check(CLI::PositiveNumber);

  std::string show_path;
  auto* sh = app.add_subcommand("show", "re-print the table of a result file");
  sh->add_option("result", show_path, "solve result or sweep report")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*s) return RunSolve(solve, std::cout);
    if (*w) return RunSweep(sweep, std::cout);
    if (*g) return RunGenerate(gen, std::cout);
    if (*v) return RunValidate(val, std::cout);
    if (*sh) return RunShow(show_path, std::cout);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kUsage;
}
