#include "pstep/pricing.h"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

namespace pstep {
namespace {

constexpr double kLoadTol = 1e-9;
constexpr double kTimeTol = 1e-9;

struct Candidate {
  double rc;
  std::vector<int> path;
};

bool CandidateLess(const Candidate& a, const Candidate& b) {
  if (a.rc != b.rc) return a.rc < b.rc;
  return a.path < b.path;
}

struct StartResult {
  std::vector<Candidate> best;
  PricingStats stats;
};

// Labeling restricted to paths leaving `start`. Labels advance one arc per
// level, so every label of a level has the same step count and dominance is
// only checked inside a level.
class StartSearch {
 public:
  StartSearch(const Instance& inst, int p, const DualSolution& duals,
              const SquareMatrix& arc_cost, const PricingConfig& cfg,
              bool time_windows, int start)
      : inst_(inst),
        p_(p),
        duals_(duals),
        arc_cost_(arc_cost),
        cfg_(cfg),
        tw_(time_windows && inst.has_windows()),
        start_(start) {}

  StartResult Run() {
    Label root;
    root.start = start_;
    root.node = start_;
    root.time = tw_ ? (*inst_.windows)[start_].open : 0.0;
    if (inst_.is_customer(start_)) root.visited.set(start_);
    store_.push_back(root);
    ++result_.stats.labels_created;

    const double start_demand = inst_.demand[start_];
    std::vector<int> level{0};
    std::vector<std::vector<int>> buckets(inst_.num_nodes());
    for (int step = 0; step < p_ && !level.empty(); ++step) {
      for (auto& b : buckets) b.clear();
      for (int idx : level) {
        const Label parent = store_[idx];
        const int i = parent.node;
        if (i == inst_.sink()) continue;
        for (int j = 1; j <= inst_.sink(); ++j) {
          if (!inst_.IsLegalArc(i, j)) continue;
          if (inst_.is_customer(j) && parent.visited.test(j)) continue;
          if (j == inst_.sink() && start_ != 0 && step + 1 < p_) continue;
          const double load = parent.load + inst_.demand[j];
          if (start_demand + load > inst_.capacity + kLoadTol) continue;
          double time = 0.0;
          if (tw_) {
            const auto& w = (*inst_.windows)[j];
            time = std::max(parent.time + inst_.service[i] + inst_.time(i, j),
                            w.open);
            if (time > w.close + kTimeTol) continue;
          }
          Label next;
          next.start = start_;
          next.node = j;
          next.steps = parent.steps + 1;
          next.load = load;
          next.time = time;
          next.visited = parent.visited;
          if (inst_.is_customer(j)) next.visited.set(j);
          next.rc = parent.rc + arc_cost_(i, j);
          next.parent = idx;
          ++result_.stats.labels_created;
          Insert(buckets[j], std::move(next));
        }
      }
      level.clear();
      for (const auto& b : buckets) level.insert(level.end(), b.begin(), b.end());
      if (start_ == 0 || step + 1 == p_) {
        for (int idx : level) Finalize(idx);
      }
    }
    std::sort(result_.best.begin(), result_.best.end(), CandidateLess);
    if (static_cast<int>(result_.best.size()) > cfg_.per_start_best) {
      result_.best.resize(cfg_.per_start_best);
    }
    return std::move(result_);
  }

 private:
  void Insert(std::vector<int>& bucket, Label label) {
    for (int idx : bucket) {
      if (Dominates(store_[idx], label, tw_)) {
        ++result_.stats.labels_dominated;
        return;
      }
    }
    const auto removed = std::remove_if(
        bucket.begin(), bucket.end(),
        [&](int idx) { return Dominates(label, store_[idx], tw_); });
    result_.stats.labels_dominated += bucket.end() - removed;
    bucket.erase(removed, bucket.end());
    store_.push_back(std::move(label));
    bucket.push_back(static_cast<int>(store_.size()) - 1);
  }

  // Adds the start/end corrections in the same order as ReducedCost so both
  // evaluate to identical doubles.
  void Finalize(int idx) {
    const Label& label = store_[idx];
    double rc = label.rc;
    if (start_ != 0) rc -= duals_.u2[start_];
    if (label.node != inst_.sink()) rc += duals_.u2[label.node];
    if (start_ == 0) rc -= duals_.u3;
    result_.stats.min_reduced_cost =
        std::min(result_.stats.min_reduced_cost, rc);
    if (!(rc < -cfg_.tol)) return;
    std::vector<int> path(label.steps + 1);
    int cursor = idx;
    for (int k = label.steps; k >= 0; --k) {
      path[k] = store_[cursor].node;
      cursor = store_[cursor].parent;
    }
    result_.best.push_back({rc, std::move(path)});
  }

  const Instance& inst_;
  int p_;
  const DualSolution& duals_;
  const SquareMatrix& arc_cost_;
  const PricingConfig& cfg_;
  bool tw_;
  int start_;
  std::vector<Label> store_;
  StartResult result_;
};

}  // namespace

bool Dominates(const Label& a, const Label& b, bool time_windows) {
  if (a.start != b.start || a.node != b.node) {
    throw std::invalid_argument("dominance needs labels with equal start and node");
  }
  if (a.steps > b.steps || a.load > b.load || a.rc > b.rc) return false;
  if (time_windows && a.time > b.time) return false;
  if ((a.visited & ~b.visited).any()) return false;
  return a.steps < b.steps || a.load < b.load || a.rc < b.rc ||
         (time_windows && a.time < b.time) || a.visited != b.visited;
}

double ModifiedArcCost(const Instance& inst, const DualSolution& duals, int i,
                       int j, bool time_windows) {
  if (i < 0 || j < 0 || i > inst.sink() || j > inst.sink() ||
      !inst.IsLegalArc(i, j)) {
    throw std::domain_error("illegal arc (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
  }
  return ArcReducedCost(inst, duals, i, j, time_windows);
}

PricingResult Price(const Instance& inst, int p, const DualSolution& duals,
                    const PricingConfig& cfg, bool time_windows) {
  if (inst.num_nodes() > kMaxPricingNodes) {
    throw std::invalid_argument("pricing supports at most " +
                                std::to_string(kMaxPricingNodes - 2) +
                                " customers");
  }
  const bool tw = time_windows && inst.has_windows();
  SquareMatrix arc_cost(inst.num_nodes());
  for (int i = 0; i <= inst.n; ++i) {
    for (int j = 1; j <= inst.sink(); ++j) {
      if (inst.IsLegalArc(i, j)) arc_cost(i, j) = ArcReducedCost(inst, duals, i, j, tw);
    }
  }

  const int starts = inst.n + 1;  // 0..n; n+1 is a sink only
  std::vector<StartResult> per_start(starts);
  auto work = [&](int start) {
    StartSearch search(inst, p, duals, arc_cost, cfg, tw, start);
    per_start[start] = search.Run();
  };
  const int workers = std::clamp(cfg.workers, 1, starts);
  if (workers == 1) {
    for (int s = 0; s < starts; ++s) work(s);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (int s = next++; s < starts; s = next++) work(s);
      });
    }
    for (auto& t : threads) t.join();
  }

  PricingResult result;
  std::vector<Candidate> merged;
  for (auto& r : per_start) {
    result.stats.labels_created += r.stats.labels_created;
    result.stats.labels_dominated += r.stats.labels_dominated;
    result.stats.min_reduced_cost =
        std::min(result.stats.min_reduced_cost, r.stats.min_reduced_cost);
    for (auto& c : r.best) merged.push_back(std::move(c));
  }
  std::sort(merged.begin(), merged.end(), CandidateLess);
  if (static_cast<int>(merged.size()) > cfg.max_columns_per_round) {
    merged.resize(cfg.max_columns_per_round);
  }
  result.columns.reserve(merged.size());
  for (auto& c : merged) {
    result.columns.push_back({MakeColumn(inst, std::move(c.path)), c.rc});
  }
  result.stats.columns_emitted = static_cast<std::int64_t>(result.columns.size());
  return result;
}

}  // namespace pstep
