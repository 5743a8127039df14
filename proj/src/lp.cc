#include "pstep/lp.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pstep {

int LinearProgram::AddRow(RowSense sense, double rhs, std::string name) {
  rows_.push_back({sense, rhs, std::move(name)});
  return num_rows() - 1;
}

int LinearProgram::AddColumn(LpColumn column) {
  std::sort(column.entries.begin(), column.entries.end(),
            [](const Coefficient& a, const Coefficient& b) {
              return a.row < b.row;
            });
  for (std::size_t k = 0; k < column.entries.size(); ++k) {
    const int row = column.entries[k].row;
    if (row < 0 || row >= num_rows()) {
      throw StructureError("column entry references row " +
                           std::to_string(row) + " of " +
                           std::to_string(num_rows()));
    }
    if (k > 0 && column.entries[k - 1].row == row) {
      throw StructureError("duplicate row " + std::to_string(row) +
                           " in column");
    }
  }
  if (column.lower > column.upper) {
    throw StructureError("column lower bound exceeds upper bound");
  }
  columns_.push_back(std::move(column));
  return num_columns() - 1;
}

std::vector<double> LinearProgram::RowActivity(
    const std::vector<double>& x) const {
  std::vector<double> activity(rows_.size(), 0.0);
  for (int j = 0; j < num_columns(); ++j) {
    for (const auto& e : columns_[j].entries) activity[e.row] += e.value * x[j];
  }
  return activity;
}

std::string LinearProgram::ToLpFormat() const {
  auto col_name = [this](int j) {
    const auto& name = columns_[j].name;
    return name.empty() ? "x" + std::to_string(j) : name;
  };
  auto term = [](std::ostringstream& out, double v, const std::string& name,
                 bool first) {
    if (v < 0) {
      out << (first ? "-" : " - ");
    } else if (!first) {
      out << " + ";
    }
    out << std::abs(v) << ' ' << name;
  };
  std::ostringstream out;
  out.precision(17);
  out << "Minimize\n obj:";
  bool first = true;
  for (int j = 0; j < num_columns(); ++j) {
    if (columns_[j].cost == 0.0) continue;
    out << ' ';
    term(out, columns_[j].cost, col_name(j), first);
    first = false;
  }
  if (first) out << " 0 " << (num_columns() ? col_name(0) : "x0");
  out << "\nSubject To\n";
  std::vector<std::vector<std::pair<int, double>>> by_row(rows_.size());
  for (int j = 0; j < num_columns(); ++j) {
    for (const auto& e : columns_[j].entries) by_row[e.row].push_back({j, e.value});
  }
  for (int i = 0; i < num_rows(); ++i) {
    out << ' ' << (rows_[i].name.empty() ? "r" + std::to_string(i)
                                         : rows_[i].name)
        << ": ";
    first = true;
    for (const auto& [j, v] : by_row[i]) {
      term(out, v, col_name(j), first);
      first = false;
    }
    if (first) out << "0 " << (num_columns() ? col_name(0) : "x0");
    switch (rows_[i].sense) {
      case RowSense::kLessEqual: out << " <= "; break;
      case RowSense::kEqual: out << " = "; break;
      case RowSense::kGreaterEqual: out << " >= "; break;
    }
    out << rows_[i].rhs << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < num_columns(); ++j) {
    const auto& c = columns_[j];
    if (std::isinf(c.lower) && std::isinf(c.upper)) {
      out << ' ' << col_name(j) << " free\n";
      continue;
    }
    out << ' ';
    if (std::isinf(c.lower)) {
      out << "-inf";
    } else {
      out << c.lower;
    }
    out << " <= " << col_name(j) << " <= ";
    if (std::isinf(c.upper)) {
      out << "+inf";
    } else {
      out << c.upper;
    }
    out << '\n';
  }
  out << "End\n";
  return out.str();
}

LinearProgram AddColumns(LinearProgram lp, std::vector<LpColumn> columns) {
  for (auto& c : columns) lp.AddColumn(std::move(c));
  return lp;
}

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

// Bounded-variable revised simplex on [A | I | D] where I holds one logical
// per row (its bounds encode the row sense) and D the phase-one artificials.
// The basis inverse is kept explicitly, column-major, and refactored from
// scratch at a fixed interval.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp),
        opt_(options),
        m_(lp.num_rows()),
        n_(lp.num_columns()),
        total_(n_ + 2 * m_),
        lo_(total_, 0.0),
        up_(total_, 0.0),
        cost_(total_, 0.0),
        x_(total_, 0.0),
        status_(total_, VarStatus::kAtLower),
        pos_(total_, -1),
        head_(m_, -1),
        art_sign_(m_, 1.0),
        binv_(static_cast<std::size_t>(m_) * m_, 0.0) {
    rhs_scale_ = 1.0;
    for (int i = 0; i < m_; ++i) {
      rhs_scale_ = std::max(rhs_scale_, std::abs(lp.row(i).rhs));
    }
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.column(j).lower;
      up_[j] = lp.column(j).upper;
    }
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      switch (lp.row(i).sense) {
        case RowSense::kLessEqual: lo_[s] = 0.0; up_[s] = kInfinity; break;
        case RowSense::kGreaterEqual: lo_[s] = -kInfinity; up_[s] = 0.0; break;
        case RowSense::kEqual: lo_[s] = 0.0; up_[s] = 0.0; break;
      }
    }
  }

  LpSolution Run(const Basis* warm) {
    LpSolution result;
    bool ready = false;
    if (warm != nullptr && !warm->empty()) ready = TryWarmStart(*warm);
    result.warm_started = ready;
    if (!ready) {
      ColdStart();
      LpStatus phase1 = Iterate(/*phase_one=*/true);
      if (phase1 == LpStatus::kIterationLimit) {
        return Finish(LpStatus::kIterationLimit, std::move(result));
      }
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) infeasibility += x_[n_ + m_ + i];
      if (infeasibility > 1e-8 * rhs_scale_) {
        return Finish(LpStatus::kInfeasible, std::move(result));
      }
      DriveOutArtificials();
    }
    SetPhaseTwoCosts();
    LpStatus status = Iterate(/*phase_one=*/false);
    return Finish(status, std::move(result));
  }

 private:
  bool IsArtificial(int v) const { return v >= n_ + m_; }
  bool IsFixed(int v) const { return lo_[v] == up_[v]; }

  template <typename F>
  void ForEachEntry(int v, F&& f) const {
    if (v < n_) {
      for (const auto& e : lp_.column(v).entries) f(e.row, e.value);
    } else if (v < n_ + m_) {
      f(v - n_, 1.0);
    } else {
      f(v - n_ - m_, art_sign_[v - n_ - m_]);
    }
  }

  double Dot(int v, const std::vector<double>& y) const {
    double sum = 0.0;
    ForEachEntry(v, [&](int r, double a) { sum += a * y[r]; });
    return sum;
  }

  void Ftran(int v, std::vector<double>& alpha) const {
    alpha.assign(m_, 0.0);
    ForEachEntry(v, [&](int k, double a) {
      const double* col = &binv_[static_cast<std::size_t>(k) * m_];
      for (int r = 0; r < m_; ++r) alpha[r] += a * col[r];
    });
  }

  void ComputeDuals(std::vector<double>& y) const {
    y.assign(m_, 0.0);
    for (int k = 0; k < m_; ++k) {
      const double* col = &binv_[static_cast<std::size_t>(k) * m_];
      double sum = 0.0;
      for (int r = 0; r < m_; ++r) sum += cost_[head_[r]] * col[r];
      y[k] = sum;
    }
  }

  double NonbasicValue(int v, VarStatus status) const {
    switch (status) {
      case VarStatus::kAtLower:
        if (std::isfinite(lo_[v])) return lo_[v];
        return std::isfinite(up_[v]) ? up_[v] : 0.0;
      case VarStatus::kAtUpper:
        if (std::isfinite(up_[v])) return up_[v];
        return std::isfinite(lo_[v]) ? lo_[v] : 0.0;
      default:
        return 0.0;
    }
  }

  VarStatus DefaultStatus(int v) const {
    if (std::isfinite(lo_[v])) return VarStatus::kAtLower;
    if (std::isfinite(up_[v])) return VarStatus::kAtUpper;
    return VarStatus::kFreeZero;
  }

  void MakeNonbasic(int v, VarStatus status) {
    if (status == VarStatus::kBasic) status = DefaultStatus(v);
    if (status == VarStatus::kAtLower && !std::isfinite(lo_[v])) {
      status = DefaultStatus(v);
    }
    if (status == VarStatus::kAtUpper && !std::isfinite(up_[v])) {
      status = DefaultStatus(v);
    }
    status_[v] = status;
    x_[v] = NonbasicValue(v, status);
    pos_[v] = -1;
  }

  // Status for a variable that leaves with value `value`: the nearer bound.
  VarStatus NearestBound(int v, double value) const {
    const bool has_lo = std::isfinite(lo_[v]);
    const bool has_up = std::isfinite(up_[v]);
    if (has_lo && has_up) {
      return std::abs(value - lo_[v]) <= std::abs(up_[v] - value)
                 ? VarStatus::kAtLower
                 : VarStatus::kAtUpper;
    }
    return DefaultStatus(v);
  }

  // Inverts the basis by Gauss-Jordan elimination with row pivoting.
  // Dependent basis positions are swapped for logicals of uncovered rows.
  void Refactor() {
    for (int attempt = 0; attempt < 2; ++attempt) {
      std::vector<double> dense(static_cast<std::size_t>(m_) * m_, 0.0);
      for (int c = 0; c < m_; ++c) {
        ForEachEntry(head_[c], [&](int r, double a) {
          dense[static_cast<std::size_t>(r) * m_ + c] = a;
        });
      }
      // inv row-major during elimination.
      std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
      for (int r = 0; r < m_; ++r) inv[static_cast<std::size_t>(r) * m_ + r] = 1.0;
      std::vector<int> pivot_row(m_, -1);
      std::vector<char> row_used(m_, 0);
      std::vector<int> deficient;
      for (int c = 0; c < m_; ++c) {
        int best = -1;
        double best_abs = 1e-10;
        for (int r = 0; r < m_; ++r) {
          if (row_used[r]) continue;
          const double v = std::abs(dense[static_cast<std::size_t>(r) * m_ + c]);
          if (v > best_abs) {
            best_abs = v;
            best = r;
          }
        }
        if (best < 0) {
          deficient.push_back(c);
          continue;
        }
        pivot_row[c] = best;
        row_used[best] = 1;
        double* prow = &dense[static_cast<std::size_t>(best) * m_];
        double* pinv = &inv[static_cast<std::size_t>(best) * m_];
        const double scale = 1.0 / prow[c];
        for (int k = 0; k < m_; ++k) {
          prow[k] *= scale;
          pinv[k] *= scale;
        }
        for (int r = 0; r < m_; ++r) {
          if (r == best) continue;
          double* row = &dense[static_cast<std::size_t>(r) * m_];
          const double f = row[c];
          if (f == 0.0) continue;
          double* irow = &inv[static_cast<std::size_t>(r) * m_];
          for (int k = 0; k < m_; ++k) {
            row[k] -= f * prow[k];
            irow[k] -= f * pinv[k];
          }
        }
      }
      if (deficient.empty()) {
        // B^-1 row c is inv row pivot_row[c]; store column-major.
        for (int c = 0; c < m_; ++c) {
          const double* irow = &inv[static_cast<std::size_t>(pivot_row[c]) * m_];
          for (int k = 0; k < m_; ++k) {
            binv_[static_cast<std::size_t>(k) * m_ + c] = irow[k];
          }
        }
        since_refactor_ = 0;
        return;
      }
      std::size_t next = 0;
      for (int r = 0; r < m_ && next < deficient.size(); ++r) {
        if (row_used[r]) continue;
        const int c = deficient[next++];
        const int out = head_[c];
        MakeNonbasic(out, NearestBound(out, x_[out]));
        const int logical = n_ + r;
        head_[c] = logical;
        pos_[logical] = c;
        status_[logical] = VarStatus::kBasic;
      }
    }
    throw std::runtime_error("simplex: basis repair failed");
  }

  void RecomputeBasics() {
    std::vector<double> r(m_);
    for (int i = 0; i < m_; ++i) r[i] = lp_.row(i).rhs;
    for (int v = 0; v < total_; ++v) {
      if (pos_[v] >= 0 || x_[v] == 0.0) continue;
      const double xv = x_[v];
      ForEachEntry(v, [&](int row, double a) { r[row] -= a * xv; });
    }
    for (int c = 0; c < m_; ++c) x_[head_[c]] = 0.0;
    for (int k = 0; k < m_; ++k) {
      if (r[k] == 0.0) continue;
      const double* col = &binv_[static_cast<std::size_t>(k) * m_];
      for (int c = 0; c < m_; ++c) x_[head_[c]] += r[k] * col[c];
    }
  }

  void ColdStart() {
    for (int v = 0; v < total_; ++v) {
      pos_[v] = -1;
      if (IsArtificial(v)) {
        lo_[v] = up_[v] = 0.0;
        status_[v] = VarStatus::kAtLower;
        x_[v] = 0.0;
      } else {
        MakeNonbasic(v, DefaultStatus(v));
      }
    }
    std::vector<double> r(m_);
    for (int i = 0; i < m_; ++i) r[i] = lp_.row(i).rhs;
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      for (const auto& e : lp_.column(j).entries) r[e.row] -= e.value * x_[j];
    }
    std::fill(binv_.begin(), binv_.end(), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int s = n_ + i;
      const double clamped = std::clamp(r[i], lo_[s], up_[s]);
      if (std::abs(r[i] - clamped) <= opt_.feasibility_tol) {
        head_[i] = s;
        pos_[s] = i;
        status_[s] = VarStatus::kBasic;
        x_[s] = r[i];
        binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
        continue;
      }
      status_[s] = clamped == lo_[s] ? VarStatus::kAtLower : VarStatus::kAtUpper;
      x_[s] = clamped;
      const int a = n_ + m_ + i;
      art_sign_[i] = r[i] > clamped ? 1.0 : -1.0;
      lo_[a] = 0.0;
      up_[a] = kInfinity;
      head_[i] = a;
      pos_[a] = i;
      status_[a] = VarStatus::kBasic;
      x_[a] = std::abs(r[i] - clamped);
      binv_[static_cast<std::size_t>(i) * m_ + i] = art_sign_[i];
    }
    for (int v = 0; v < total_; ++v) cost_[v] = IsArtificial(v) ? 1.0 : 0.0;
    since_refactor_ = 0;
  }

  bool TryWarmStart(const Basis& basis) {
    if (static_cast<int>(basis.rows.size()) != m_ ||
        static_cast<int>(basis.columns.size()) > n_) {
      return false;
    }
    int basic = 0;
    for (auto s : basis.columns) basic += s == VarStatus::kBasic;
    for (auto s : basis.rows) basic += s == VarStatus::kBasic;
    if (basic != m_) return false;
    int c = 0;
    for (int v = 0; v < total_; ++v) {
      pos_[v] = -1;
      VarStatus s = VarStatus::kAtLower;
      if (v < n_) {
        s = v < static_cast<int>(basis.columns.size()) ? basis.columns[v]
                                                       : DefaultStatus(v);
      } else if (v < n_ + m_) {
        s = basis.rows[v - n_];
      } else {
        lo_[v] = up_[v] = 0.0;
      }
      if (s == VarStatus::kBasic) {
        head_[c] = v;
        pos_[v] = c++;
        status_[v] = VarStatus::kBasic;
        x_[v] = 0.0;
      } else {
        MakeNonbasic(v, s);
      }
    }
    Refactor();
    RecomputeBasics();
    const double tol = 1e3 * opt_.feasibility_tol * rhs_scale_;
    for (int r = 0; r < m_; ++r) {
      const int v = head_[r];
      if (x_[v] < lo_[v] - tol || x_[v] > up_[v] + tol) return false;
    }
    return true;
  }

  void SetPhaseTwoCosts() {
    for (int v = 0; v < total_; ++v) cost_[v] = v < n_ ? lp_.column(v).cost : 0.0;
  }

  void Pivot(int leave_pos, int enter, const std::vector<double>& alpha) {
    const double pivot = alpha[leave_pos];
    for (int k = 0; k < m_; ++k) {
      double* col = &binv_[static_cast<std::size_t>(k) * m_];
      const double v = col[leave_pos] / pivot;
      if (v != 0.0) {
        for (int r = 0; r < m_; ++r) col[r] -= alpha[r] * v;
      }
      col[leave_pos] = v;
    }
    const int out = head_[leave_pos];
    pos_[out] = -1;
    head_[leave_pos] = enter;
    pos_[enter] = leave_pos;
    status_[enter] = VarStatus::kBasic;
    ++since_refactor_;
  }

  // After phase one every artificial still in the basis sits at zero; swap
  // each for a structural or logical with a usable pivot.
  void DriveOutArtificials() {
    std::vector<double> alpha;
    std::vector<double> row(m_);
    for (int r = 0; r < m_; ++r) {
      const int a = head_[r];
      if (!IsArtificial(a)) continue;
      for (int k = 0; k < m_; ++k) row[k] = binv_[static_cast<std::size_t>(k) * m_ + r];
      int best = -1;
      double best_abs = 1e-7;
      bool best_fixed = true;
      for (int v = 0; v < n_ + m_; ++v) {
        if (pos_[v] >= 0) continue;
        double value = 0.0;
        ForEachEntry(v, [&](int k, double c) { value += c * row[k]; });
        const bool fixed = IsFixed(v);
        const double abs_value = std::abs(value);
        // Prefer non-fixed candidates, then the largest pivot.
        if ((best_fixed && !fixed && abs_value > 1e-7) ||
            (fixed == best_fixed && abs_value > best_abs)) {
          best = v;
          best_abs = abs_value;
          best_fixed = fixed;
        }
      }
      if (best < 0) throw std::runtime_error("simplex: artificial stuck in basis");
      Ftran(best, alpha);
      Pivot(r, best, alpha);
      lo_[a] = up_[a] = 0.0;
      status_[a] = VarStatus::kAtLower;
      x_[a] = 0.0;
    }
    Refactor();
    RecomputeBasics();
  }

  LpStatus Iterate(bool phase_one) {
    std::vector<double> y;
    std::vector<double> alpha;
    bool verified = false;
    while (true) {
      if (iterations_ >= opt_.max_iterations) return LpStatus::kIterationLimit;
      if (since_refactor_ >= opt_.refactor_interval) {
        Refactor();
        RecomputeBasics();
      }
      ComputeDuals(y);

      int enter = -1;
      double enter_d = 0.0;
      double best_score = 0.0;
      const int limit = phase_one ? total_ : n_ + m_;
      for (int v = 0; v < limit; ++v) {
        if (pos_[v] >= 0 || IsFixed(v)) continue;
        const double d = cost_[v] - Dot(v, y);
        bool eligible = false;
        switch (status_[v]) {
          case VarStatus::kAtLower: eligible = d < -opt_.optimality_tol; break;
          case VarStatus::kAtUpper: eligible = d > opt_.optimality_tol; break;
          case VarStatus::kFreeZero:
            eligible = std::abs(d) > opt_.optimality_tol;
            break;
          case VarStatus::kBasic: break;
        }
        if (!eligible) continue;
        if (bland_) {
          enter = v;
          enter_d = d;
          break;
        }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          enter = v;
          enter_d = d;
        }
      }
      if (enter < 0) {
        if (since_refactor_ == 0 || verified) return LpStatus::kOptimal;
        Refactor();
        RecomputeBasics();
        verified = true;
        continue;
      }
      verified = false;

      const double dir = enter_d < 0.0 ? 1.0 : -1.0;
      Ftran(enter, alpha);
      double theta = up_[enter] - lo_[enter];  // bound flip
      int leave = -1;
      double leave_alpha = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double a = dir * alpha[r];
        if (std::abs(a) <= opt_.pivot_tol) continue;
        const int v = head_[r];
        double t;
        if (a > 0.0) {
          if (!std::isfinite(lo_[v])) continue;
          t = (x_[v] - lo_[v]) / a;
        } else {
          if (!std::isfinite(up_[v])) continue;
          t = (up_[v] - x_[v]) / -a;
        }
        t = std::max(t, 0.0);
        if (t < theta - 1e-12) {
          theta = t;
          leave = r;
          leave_alpha = a;
        } else if (leave >= 0 && t <= theta + 1e-12) {
          const bool better = bland_ ? v < head_[leave]
                                     : std::abs(a) > std::abs(leave_alpha);
          if (better) {
            theta = std::min(theta, t);
            leave = r;
            leave_alpha = a;
          }
        }
      }
      if (!std::isfinite(theta)) return LpStatus::kUnbounded;

      if (theta != 0.0) {
        x_[enter] += dir * theta;
        for (int r = 0; r < m_; ++r) x_[head_[r]] -= dir * theta * alpha[r];
      }
      if (leave < 0) {
        status_[enter] = status_[enter] == VarStatus::kAtUpper
                             ? VarStatus::kAtLower
                             : VarStatus::kAtUpper;
        x_[enter] = NonbasicValue(enter, status_[enter]);
      } else {
        const int out = head_[leave];
        const VarStatus out_status =
            leave_alpha > 0.0 ? VarStatus::kAtLower : VarStatus::kAtUpper;
        Pivot(leave, enter, alpha);
        if (IsArtificial(out)) {
          lo_[out] = up_[out] = 0.0;
          status_[out] = VarStatus::kAtLower;
          x_[out] = 0.0;
        } else {
          status_[out] = out_status;
          x_[out] = NonbasicValue(out, out_status);
        }
      }
      ++iterations_;
      if (theta <= 1e-12) {
        if (++stall_ >= opt_.stall_threshold) bland_ = true;
      } else {
        stall_ = 0;
        bland_ = false;
      }
    }
  }

  LpSolution Finish(LpStatus status, LpSolution result) {
    result.status = status;
    result.iterations = iterations_;
    result.primal.assign(x_.begin(), x_.begin() + n_);
    result.basis.columns.assign(status_.begin(), status_.begin() + n_);
    result.basis.rows.assign(status_.begin() + n_, status_.begin() + n_ + m_);
    double objective = 0.0;
    for (int j = 0; j < n_; ++j) objective += lp_.column(j).cost * x_[j];
    result.objective = objective;
    if (status == LpStatus::kOptimal) {
      std::vector<double> y;
      ComputeDuals(y);
      result.row_duals = y;
      result.reduced_costs.resize(n_);
      for (int j = 0; j < n_; ++j) result.reduced_costs[j] = cost_[j] - Dot(j, y);
    }
    return result;
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  int m_;
  int n_;
  int total_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> cost_;
  std::vector<double> x_;
  std::vector<VarStatus> status_;
  std::vector<int> pos_;
  std::vector<int> head_;
  std::vector<double> art_sign_;
  std::vector<double> binv_;
  double rhs_scale_ = 1.0;
  int iterations_ = 0;
  int since_refactor_ = 0;
  int stall_ = 0;
  bool bland_ = false;
};

}  // namespace

LpSolution SolveLp(const LinearProgram& lp, const Basis* warm,
                   const SimplexOptions& options) {
  Simplex simplex(lp, options);
  return simplex.Run(warm);
}

double DualObjective(const LinearProgram& lp, const LpSolution& solution) {
  double value = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) {
    value += lp.row(i).rhs * solution.row_duals[i];
  }
  for (int j = 0; j < lp.num_columns(); ++j) {
    const auto status = solution.basis.columns[j];
    const auto& c = lp.column(j);
    if (status == VarStatus::kAtLower) {
      value += solution.reduced_costs[j] * c.lower;
    } else if (status == VarStatus::kAtUpper) {
      value += solution.reduced_costs[j] * c.upper;
    }
  }
  return value;
}

}  // namespace pstep
