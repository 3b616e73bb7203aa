#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "mesc/milp/model.hpp"

namespace mesc::milp {

enum class LpStatus : std::uint8_t { Optimal, Infeasible, Unbounded, Aborted, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::Aborted: return "aborted";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // structural variables, original units
  double objective = 0.0;
  long iterations = 0;
  int certificate_row = -1;  // infeasible: row implicated by the final violation
};

// Bounded-variable revised simplex over the model rows in slack form
// (a.x + s = rhs, slack bounds encode the sense). The basis is kept as a
// sparse LU factorization (refreshed periodically) plus product-form eta
// updates between refreshes. Pivoting is deterministic: Dantzig pricing with
// lowest-index tie-breaks, switching to Bland's rule after a stall so the
// degenerate fixtures terminate.
class SimplexSolver {
 public:
  explicit SimplexSolver(const MilpModel& model, SolverConfig config = {})
      : config_(config),
        n_struct_(static_cast<int>(model.num_variables())),
        m_(static_cast<int>(model.num_constraints())),
        n_total_(n_struct_ + m_) {
    config_.validate();
    build_scaled_problem(model);
    reset_basis();
  }

  // Bounds are given in original (unscaled) units.
  void set_variable_bounds(VarId j, double lower, double upper) {
    if (j < 0 || j >= n_struct_) throw ModelError("simplex: bad variable id");
    if (!(lower <= upper)) throw ModelError("simplex: lower bound exceeds upper bound");
    lb_[j] = lower / col_scale_[j];
    ub_[j] = upper / col_scale_[j];
  }

  std::pair<double, double> variable_bounds(VarId j) const {
    return {lb_[j] * col_scale_[j], ub_[j] * col_scale_[j]};
  }

  void reset_variable_bounds() {
    lb_ = model_lb_;
    ub_ = model_ub_;
  }

  std::vector<std::uint8_t> basis_snapshot() const { return status_; }

  void load_basis(const std::vector<std::uint8_t>& snapshot) {
    if (snapshot.size() != status_.size()) throw ModelError("simplex: basis size mismatch");
    int basics = 0;
    for (std::uint8_t s : snapshot) basics += (s == kBasic);
    if (basics != m_) {
      reset_basis();
      return;
    }
    status_ = snapshot;
    basis_dirty_ = true;
  }

  void reset_basis() {
    status_.assign(n_total_, kAtLower);
    for (int j = 0; j < n_struct_; ++j) status_[j] = preferred_nonbasic(j);
    for (int i = 0; i < m_; ++i) status_[n_struct_ + i] = kBasic;
    basis_dirty_ = true;
  }

  void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) {
    deadline_ = deadline;
  }

  long iterations_total() const { return iterations_total_; }

  LpSolution solve() {
    LpSolution out;
    if (m_ == 0) return solve_without_rows(out);

    if (!assemble_basis()) {
      reset_basis();
      if (!assemble_basis()) throw SolveError("simplex: could not factorize slack basis");
    }
    recompute_basic_values();

    long iters_before = iterations_total_;
    LpStatus st = run_phase(/*phase1=*/true);
    if (st == LpStatus::Optimal) {
      if (total_infeasibility() > accept_infeas_tol()) {
        out.status = LpStatus::Infeasible;
        out.certificate_row = worst_violation_row();
        out.iterations = iterations_total_ - iters_before;
        return out;
      }
      st = run_phase(/*phase1=*/false);
    }
    out.iterations = iterations_total_ - iters_before;
    out.status = st;
    if (st == LpStatus::Optimal || st == LpStatus::Unbounded) {
      out.values = extract_values();
      out.objective = original_cost_dot(out.values);
    }
    if (st == LpStatus::Infeasible) out.certificate_row = worst_violation_row();
    return out;
  }

 private:
  static constexpr std::uint8_t kAtLower = 0;
  static constexpr std::uint8_t kAtUpper = 1;
  static constexpr std::uint8_t kBasic = 2;

  static constexpr double kDualTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;
  static constexpr long kIterationLimit = 2000000;
  static constexpr int kStallThreshold = 2000;
  static constexpr int kMaxEtas = 64;

  struct Eta {
    int row = -1;
    double pivot = 1.0;
    std::vector<std::pair<int, double>> entries;  // (row, value), pivot row excluded
  };

  void build_scaled_problem(const MilpModel& model) {
    // Gather structural columns.
    std::vector<std::vector<std::pair<int, double>>> cols(n_struct_);
    rhs_.assign(m_, 0.0);
    const auto& constraints = model.constraints();
    for (int i = 0; i < m_; ++i) {
      for (const auto& [id, coef] : constraints[i].terms) {
        if (coef != 0.0) cols[id].push_back({i, coef});
      }
      rhs_[i] = constraints[i].rhs;
    }

    // Geometric equilibration with powers of two, two sweeps.
    row_scale_.assign(m_, 1.0);
    col_scale_.assign(n_struct_, 1.0);
    for (int sweep = 0; sweep < 2; ++sweep) {
      std::vector<double> rmin(m_, kInfinity), rmax(m_, 0.0);
      for (int j = 0; j < n_struct_; ++j) {
        for (const auto& [i, v] : cols[j]) {
          double a = std::abs(v) * row_scale_[i] * col_scale_[j];
          rmin[i] = std::min(rmin[i], a);
          rmax[i] = std::max(rmax[i], a);
        }
      }
      for (int i = 0; i < m_; ++i) {
        if (rmax[i] > 0.0) row_scale_[i] *= pow2_scale(rmin[i] * rmax[i]);
      }
      std::vector<double> cmin(n_struct_, kInfinity), cmax(n_struct_, 0.0);
      for (int j = 0; j < n_struct_; ++j) {
        for (const auto& [i, v] : cols[j]) {
          double a = std::abs(v) * row_scale_[i] * col_scale_[j];
          cmin[j] = std::min(cmin[j], a);
          cmax[j] = std::max(cmax[j], a);
        }
      }
      for (int j = 0; j < n_struct_; ++j) {
        if (cmax[j] > 0.0) col_scale_[j] *= pow2_scale(cmin[j] * cmax[j]);
      }
    }

    // Freeze the scaled CSC arrays. Slack column for row i is implicit (+1).
    col_ptr_.assign(n_struct_ + 1, 0);
    for (int j = 0; j < n_struct_; ++j) col_ptr_[j + 1] = col_ptr_[j] + static_cast<int>(cols[j].size());
    col_row_.resize(col_ptr_[n_struct_]);
    col_val_.resize(col_ptr_[n_struct_]);
    for (int j = 0; j < n_struct_; ++j) {
      int k = col_ptr_[j];
      for (const auto& [i, v] : cols[j]) {
        col_row_[k] = i;
        col_val_[k] = v * row_scale_[i] * col_scale_[j];
        ++k;
      }
    }
    for (int i = 0; i < m_; ++i) rhs_[i] *= row_scale_[i];

    // Bounds and costs in scaled space. Slacks keep unit coefficients, so
    // their bounds scale by the row factor.
    lb_.assign(n_total_, 0.0);
    ub_.assign(n_total_, 0.0);
    cost_.assign(n_total_, 0.0);
    original_cost_.assign(n_struct_, 0.0);
    for (int j = 0; j < n_struct_; ++j) {
      const Variable& v = model.variable(j);
      lb_[j] = v.lower / col_scale_[j];
      ub_[j] = v.upper / col_scale_[j];
      cost_[j] = model.objective()[j] * col_scale_[j];
      original_cost_[j] = model.objective()[j];
    }
    for (int i = 0; i < m_; ++i) {
      int j = n_struct_ + i;
      switch (constraints[i].sense) {
        case Sense::LessEqual:
          lb_[j] = 0.0;
          ub_[j] = kInfinity;
          break;
        case Sense::GreaterEqual:
          lb_[j] = -kInfinity;
          ub_[j] = 0.0;
          break;
        case Sense::Equal:
          lb_[j] = 0.0;
          ub_[j] = 0.0;
          break;
      }
    }
    objective_constant_ = model.objective_constant();
    model_lb_ = lb_;
    model_ub_ = ub_;
  }

  static double pow2_scale(double product_of_extremes) {
    if (!(product_of_extremes > 0.0) || !std::isfinite(product_of_extremes)) return 1.0;
    int e = static_cast<int>(std::lround(-0.5 * std::log2(product_of_extremes)));
    e = std::clamp(e, -40, 40);
    return std::ldexp(1.0, e);
  }

  std::uint8_t preferred_nonbasic(int j) const {
    if (std::isfinite(lb_[j])) return kAtLower;
    if (std::isfinite(ub_[j])) return kAtUpper;
    return kAtLower;  // free variable rests at 0
  }

  double nonbasic_value(int j) const {
    if (status_[j] == kAtLower) return std::isfinite(lb_[j]) ? lb_[j] : 0.0;
    return std::isfinite(ub_[j]) ? ub_[j] : 0.0;
  }

  // --- basis factorization -------------------------------------------------

  bool assemble_basis() {
    basic_.clear();
    basic_.reserve(m_);
    for (int j = 0; j < n_total_; ++j) {
      if (status_[j] == kBasic) basic_.push_back(j);
    }
    if (static_cast<int>(basic_.size()) != m_) return false;
    row_of_basic_.assign(n_total_, -1);
    for (int i = 0; i < m_; ++i) row_of_basic_[basic_[i]] = i;
    return refactorize();
  }

  bool refactorize() {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(m_) * 4);
    for (int i = 0; i < m_; ++i) {
      int j = basic_[i];
      if (j >= n_struct_) {
        trips.emplace_back(j - n_struct_, i, 1.0);
      } else {
        for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
          trips.emplace_back(col_row_[k], i, col_val_[k]);
        }
      }
    }
    Eigen::SparseMatrix<double> B(m_, m_);
    B.setFromTriplets(trips.begin(), trips.end());
    lu_.analyzePattern(B);
    lu_.factorize(B);
    etas_.clear();
    if (lu_.info() != Eigen::Success) return false;
    basis_dirty_ = false;
    return true;
  }

  void ftran(Eigen::VectorXd& v) {
    v = lu_.solve(v);
    for (const Eta& e : etas_) {
      double alpha = v[e.row] / e.pivot;
      if (alpha != 0.0) {
        for (const auto& [i, w] : e.entries) v[i] -= w * alpha;
      }
      v[e.row] = alpha;
    }
  }

  void btran(Eigen::VectorXd& v) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double dot = 0.0;
      for (const auto& [i, w] : it->entries) dot += w * v[i];
      v[it->row] = (v[it->row] - dot) / it->pivot;
    }
    v = lu_.transpose().solve(v);
  }

  Eigen::VectorXd column_dense(int j) const {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(m_);
    if (j >= n_struct_) {
      a[j - n_struct_] = 1.0;
    } else {
      for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) a[col_row_[k]] = col_val_[k];
    }
    return a;
  }

  double column_dot(int j, const Eigen::VectorXd& y) const {
    if (j >= n_struct_) return y[j - n_struct_];
    double dot = 0.0;
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) dot += col_val_[k] * y[col_row_[k]];
    return dot;
  }

  void recompute_basic_values() {
    Eigen::VectorXd r(m_);
    for (int i = 0; i < m_; ++i) r[i] = rhs_[i];
    for (int j = 0; j < n_total_; ++j) {
      if (status_[j] == kBasic) continue;
      double v = nonbasic_value(j);
      if (v == 0.0) continue;
      if (j >= n_struct_) {
        r[j - n_struct_] -= v;
      } else {
        for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) r[col_row_[k]] -= col_val_[k] * v;
      }
    }
    ftran(r);
    xb_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) xb_[i] = r[i];
  }

  // --- feasibility bookkeeping ---------------------------------------------

  double violation(int row) const {
    int j = basic_[row];
    double v = xb_[row];
    if (v < lb_[j]) return lb_[j] - v;
    if (v > ub_[j]) return v - ub_[j];
    return 0.0;
  }

  double total_infeasibility() const {
    double total = 0.0;
    for (int i = 0; i < m_; ++i) total += violation(i);
    return total;
  }

  double accept_infeas_tol() const { return config_.feasibility_tol * 10.0 * std::max(1, m_); }

  int worst_violation_row() const {
    int worst = -1;
    double worst_v = 0.0;
    for (int i = 0; i < m_; ++i) {
      double v = violation(i);
      if (v > worst_v) {
        worst_v = v;
        worst = i;
      }
    }
    return worst;
  }

  // --- main simplex loop ----------------------------------------------------

  LpStatus run_phase(bool phase1) {
    const double ftol = config_.feasibility_tol;
    bool bland = false;
    int stall = 0;
    double best_metric = kInfinity;
    Eigen::VectorXd y(m_), w(m_);

    for (;;) {
      if (iterations_total_ >= kIterationLimit) return LpStatus::IterationLimit;
      if (deadline_ && (iterations_total_ & 0xff) == 0 &&
          std::chrono::steady_clock::now() > *deadline_) {
        return LpStatus::Aborted;
      }
      if (static_cast<int>(etas_.size()) >= kMaxEtas || basis_dirty_) {
        if (!refactorize()) {
          reset_basis();
          if (!assemble_basis()) throw SolveError("simplex: basis repair failed");
        }
        recompute_basic_values();
      }

      if (phase1 && total_infeasibility() <= accept_infeas_tol()) return LpStatus::Optimal;

      // Phase costs on basic rows; nonbasic costs are the real costs in
      // phase 2 and zero in phase 1.
      for (int i = 0; i < m_; ++i) {
        int j = basic_[i];
        double c;
        if (phase1) {
          c = (xb_[i] < lb_[j] - ftol) ? -1.0 : (xb_[i] > ub_[j] + ftol ? 1.0 : 0.0);
        } else {
          c = cost_[j];
        }
        y[i] = c;
      }
      btran(y);

      // Pricing.
      int enter = -1;
      int enter_dir = 0;
      double best_score = bland ? 0.0 : kDualTol;
      for (int j = 0; j < n_total_; ++j) {
        std::uint8_t st = status_[j];
        if (st == kBasic) continue;
        if (lb_[j] == ub_[j]) continue;  // fixed, never enters
        double cj = phase1 ? 0.0 : cost_[j];
        double dj = cj - column_dot(j, y);
        double score = 0.0;
        int dir = 0;
        bool lower_side = (st == kAtLower) || (!std::isfinite(lb_[j]) && !std::isfinite(ub_[j]));
        if (lower_side && dj < -kDualTol) {
          score = -dj;
          dir = +1;
        } else if (st == kAtUpper && dj > kDualTol) {
          score = dj;
          dir = -1;
        } else if (!std::isfinite(lb_[j]) && !std::isfinite(ub_[j]) && dj > kDualTol) {
          score = dj;
          dir = -1;
        }
        if (dir == 0) continue;
        if (bland) {
          enter = j;
          enter_dir = dir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          enter = j;
          enter_dir = dir;
        }
      }

      if (enter < 0) {
        if (phase1) {
          return total_infeasibility() <= accept_infeas_tol() ? LpStatus::Optimal
                                                              : LpStatus::Infeasible;
        }
        return LpStatus::Optimal;
      }

      // Direction through the basis.
      w = column_dense(enter);
      ftran(w);

      // Ratio test: smallest blocking step among basics, first row wins ties.
      const double sigma = static_cast<double>(enter_dir);
      double best_ratio = kInfinity;
      int leave_row = -1;
      int leave_to = kAtLower;

      for (int i = 0; i < m_; ++i) {
        double rate = -sigma * w[i];
        if (std::abs(rate) <= kPivotTol) continue;
        int j = basic_[i];
        double v = xb_[i];
        double ratio;
        int to;
        if (phase1 && v < lb_[j] - ftol) {
          if (rate <= 0.0) continue;  // moving further below; counted in the gradient
          ratio = (lb_[j] - v) / rate;
          to = kAtLower;
        } else if (phase1 && v > ub_[j] + ftol) {
          if (rate >= 0.0) continue;
          ratio = (ub_[j] - v) / rate;
          to = kAtUpper;
        } else if (rate > 0.0) {
          if (!std::isfinite(ub_[j])) continue;
          ratio = (ub_[j] - v) / rate;
          to = kAtUpper;
        } else {
          if (!std::isfinite(lb_[j])) continue;
          ratio = (lb_[j] - v) / rate;
          to = kAtLower;
        }
        ratio = std::max(ratio, 0.0);  // numerical guard on near-degenerate rows
        if (ratio < best_ratio) {
          best_ratio = ratio;
          leave_row = i;
          leave_to = to;
        }
      }

      const double span = ub_[enter] - lb_[enter];
      const bool flip = std::isfinite(span) && span <= best_ratio;
      if (!flip && leave_row < 0) {
        if (phase1) throw SolveError("simplex: unbounded phase-1 direction");
        return LpStatus::Unbounded;
      }

      ++iterations_total_;

      const double step = flip ? span : best_ratio;
      if (step != 0.0) {
        for (int i = 0; i < m_; ++i) xb_[i] -= sigma * step * w[i];
      }

      if (flip) {
        status_[enter] = (status_[enter] == kAtLower) ? kAtUpper : kAtLower;
      } else {
        int leaving = basic_[leave_row];
        double enter_value = nonbasic_value_for_entry(enter, sigma, step);
        status_[leaving] = static_cast<std::uint8_t>(leave_to);
        status_[enter] = kBasic;
        basic_[leave_row] = enter;
        row_of_basic_[leaving] = -1;
        row_of_basic_[enter] = leave_row;
        xb_[leave_row] = enter_value;
        push_eta(leave_row, w);
      }

      // Stall detection drives the anti-cycling fallback.
      double metric = phase1 ? total_infeasibility() : current_objective();
      if (metric < best_metric - 1e-10) {
        best_metric = metric;
        stall = 0;
        bland = false;
      } else if (++stall > kStallThreshold) {
        bland = true;
      }
    }
  }

  double nonbasic_value_for_entry(int j, double sigma, double step) const {
    double base = nonbasic_value(j);
    return base + sigma * step;
  }

  double current_objective() const {
    double total = 0.0;
    for (int j = 0; j < n_total_; ++j) {
      if (cost_[j] == 0.0) continue;
      if (status_[j] == kBasic) {
        total += cost_[j] * xb_[row_of_basic_[j]];
      } else {
        total += cost_[j] * nonbasic_value(j);
      }
    }
    return total;
  }

  void push_eta(int row, const Eigen::VectorXd& w) {
    Eta e;
    e.row = row;
    e.pivot = w[row];
    if (std::abs(e.pivot) < 1e-12) {
      // Pivot too small to carry through updates; force refactorization.
      basis_dirty_ = true;
      return;
    }
    e.entries.reserve(16);
    for (int i = 0; i < m_; ++i) {
      if (i != row && std::abs(w[i]) > 1e-13) e.entries.push_back({i, w[i]});
    }
    etas_.push_back(std::move(e));
  }

  std::vector<double> extract_values() const {
    std::vector<double> values(n_struct_, 0.0);
    for (int j = 0; j < n_struct_; ++j) {
      double v = (status_[j] == kBasic) ? xb_[row_of_basic_[j]] : nonbasic_value(j);
      values[j] = v * col_scale_[j];
    }
    return values;
  }

  double original_cost_dot(const std::vector<double>& values) const {
    double total = objective_constant_;
    for (int j = 0; j < n_struct_; ++j) {
      if (original_cost_[j] != 0.0) total += original_cost_[j] * values[j];
    }
    return total;
  }

  LpSolution solve_without_rows(LpSolution& out) {
    out.values.assign(n_struct_, 0.0);
    for (int j = 0; j < n_struct_; ++j) {
      double lo = lb_[j] * col_scale_[j];
      double hi = ub_[j] * col_scale_[j];
      if (lo > hi) {
        out.status = LpStatus::Infeasible;
        return out;
      }
      double c = original_cost_[j];
      double v;
      if (c > 0.0) {
        v = lo;
      } else if (c < 0.0) {
        v = hi;
      } else {
        v = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
      }
      if (!std::isfinite(v)) {
        out.status = LpStatus::Unbounded;
        return out;
      }
      out.values[j] = v;
    }
    out.status = LpStatus::Optimal;
    out.objective = original_cost_dot(out.values);
    return out;
  }

  SolverConfig config_;
  int n_struct_ = 0;
  int m_ = 0;
  int n_total_ = 0;

  // Scaled problem data (CSC structural columns, implicit unit slacks).
  std::vector<int> col_ptr_, col_row_;
  std::vector<double> col_val_;
  std::vector<double> rhs_;
  std::vector<double> lb_, ub_, cost_;
  std::vector<double> model_lb_, model_ub_;
  std::vector<double> original_cost_;
  std::vector<double> row_scale_, col_scale_;
  double objective_constant_ = 0.0;

  // Basis state.
  std::vector<std::uint8_t> status_;
  std::vector<int> basic_;
  std::vector<int> row_of_basic_;
  std::vector<double> xb_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  bool basis_dirty_ = true;

  std::optional<std::chrono::steady_clock::time_point> deadline_;
  long iterations_total_ = 0;
};

// Solves the LP relaxation of the model (binaries relaxed to their bounds).
inline LpSolution solve_lp(const MilpModel& model, const SolverConfig& config = {}) {
  if (model.num_variables() == 0) throw ModelError("solve_lp: model has no variables");
  SimplexSolver solver(model, config);
  return solver.solve();
}

}  // namespace mesc::milp
