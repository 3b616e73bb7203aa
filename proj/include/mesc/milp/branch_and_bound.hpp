#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "mesc/milp/model.hpp"
#include "mesc/milp/simplex.hpp"

namespace mesc::milp {

// Branch-and-bound over LP relaxations. Branching picks the most fractional
// binary (ties to the lowest variable id); search pops the best-bound open
// node and then dives depth-first, which finds incumbents early. Integral
// incumbents are polished by re-solving the LP with all binaries pinned to
// their rounded values so the continuous part is consistent to LP precision.
// Single-worker and fully deterministic: two runs on the same model produce
// identical node counts, objectives and incumbents.
class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, SolverConfig config)
      : model_(model), config_(std::move(config)), solver_(model, config_) {
    config_.validate();
  }

  MipSolution solve() {
    const auto start = std::chrono::steady_clock::now();
    const auto deadline = start + std::chrono::duration<double>(config_.time_limit_seconds);
    solver_.set_deadline(std::chrono::time_point_cast<std::chrono::steady_clock::duration>(deadline));

    MipSolution out;
    binaries_ = model_.binary_variables();

    // Node arena: each node records one bound change on top of its parent.
    arena_.clear();
    arena_.push_back(NodeRec{-1, -1, 0});
    std::priority_queue<OpenNode, std::vector<OpenNode>, OpenNodeOrder> open;
    open.push(OpenNode{-kInfinity, 0, 0, {}});

    double incumbent_obj = kInfinity;
    std::vector<double> incumbent;
    long next_id = 1;
    bool out_of_time = false;
    bool out_of_nodes = false;

    bool have_node = false;
    OpenNode current;

    while (true) {
      if (!have_node) {
        if (open.empty()) break;
        current = open.top();
        open.pop();
        if (current.bound >= cutoff(incumbent_obj)) continue;  // pruned by a newer incumbent
        apply_node_bounds(current.arena_idx);
        if (!current.basis.empty()) solver_.load_basis(current.basis);
        have_node = true;
      }

      if (std::chrono::steady_clock::now() > deadline) {
        out_of_time = true;
        break;
      }
      if (config_.node_limit >= 0 && out.nodes >= config_.node_limit) {
        out_of_nodes = true;
        break;
      }

      LpSolution lp = solver_.solve();
      ++out.nodes;
      have_node = false;

      if (lp.status == LpStatus::Aborted) {
        out_of_time = true;
        // The node stays open at its parent bound for reporting purposes.
        open.push(OpenNode{current.bound, next_id++, current.arena_idx, {}});
        break;
      }
      if (lp.status == LpStatus::IterationLimit) {
        throw SolveError("solve_mip: simplex iteration limit reached");
      }
      if (lp.status == LpStatus::Unbounded) {
        throw SolveError("solve_mip: LP relaxation is unbounded");
      }
      if (lp.status == LpStatus::Infeasible) continue;

      double bound = lp.objective;
      if (bound >= cutoff(incumbent_obj)) continue;

      int branch_var = pick_branch_variable(lp.values);
      if (branch_var < 0) {
        // Integral point: polish and record.
        auto [obj, values, ok] = polish(lp);
        if (ok && obj < incumbent_obj - 1e-9) {
          incumbent_obj = obj;
          incumbent = std::move(values);
        }
        continue;
      }

      double v = lp.values[branch_var];
      int dive_value = (v >= 0.5) ? 1 : 0;

      // Queue the other child with this node's bound and basis.
      int other_idx = static_cast<int>(arena_.size());
      arena_.push_back(NodeRec{current.arena_idx, branch_var, 1 - dive_value});
      open.push(OpenNode{bound, next_id++, other_idx, solver_.basis_snapshot()});

      // Dive into the chosen child: apply the single bound change in place.
      int dive_idx = static_cast<int>(arena_.size());
      arena_.push_back(NodeRec{current.arena_idx, branch_var, dive_value});
      solver_.set_variable_bounds(branch_var, dive_value, dive_value);
      current = OpenNode{bound, next_id++, dive_idx, {}};
      have_node = true;
    }

    // Final report.
    double best_bound = incumbent_obj;
    if (have_node) best_bound = std::min(best_bound, current.bound);
    if (!open.empty()) best_bound = std::min(best_bound, open.top().bound);
    out.simplex_iterations = solver_.iterations_total();
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (incumbent.empty()) {
      if (out_of_time) {
        out.status = SolveStatus::TimeLimit;
      } else if (out_of_nodes) {
        out.status = SolveStatus::FeasibleGap;
      } else {
        out.status = SolveStatus::Infeasible;
      }
      out.objective = kInfinity;
      out.best_bound = (out.status == SolveStatus::Infeasible) ? kInfinity : best_bound;
      out.relative_gap = kInfinity;
      return out;
    }

    out.values = std::move(incumbent);
    out.objective = incumbent_obj;
    out.best_bound = std::min(best_bound, incumbent_obj);
    out.relative_gap = relative_gap(out.objective, out.best_bound);
    if (out_of_time) {
      out.status = (out.relative_gap <= config_.relative_gap + 1e-12) ? SolveStatus::Optimal
                                                                      : SolveStatus::TimeLimit;
    } else if (out_of_nodes) {
      out.status = (out.relative_gap <= config_.relative_gap + 1e-12) ? SolveStatus::Optimal
                                                                      : SolveStatus::FeasibleGap;
    } else {
      out.status = SolveStatus::Optimal;
      out.best_bound = out.objective;
      out.relative_gap = 0.0;
    }
    return out;
  }

 private:
  struct NodeRec {
    int parent;
    VarId var;
    int value;
  };

  struct OpenNode {
    double bound;
    long id;
    int arena_idx;
    std::vector<std::uint8_t> basis;
  };

  struct OpenNodeOrder {
    bool operator()(const OpenNode& a, const OpenNode& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      return a.id > b.id;
    }
  };

  static double relative_gap(double incumbent, double bound) {
    double diff = incumbent - bound;
    if (diff <= 0.0) return 0.0;
    double denom = std::abs(incumbent);
    if (denom < 1e-10) return diff < 1e-9 ? 0.0 : kInfinity;
    return diff / denom;
  }

  double cutoff(double incumbent_obj) const {
    if (!std::isfinite(incumbent_obj)) return kInfinity;
    return incumbent_obj - std::max(config_.relative_gap * std::abs(incumbent_obj), 1e-9);
  }

  void apply_node_bounds(int arena_idx) {
    solver_.reset_variable_bounds();
    for (int idx = arena_idx; idx > 0; idx = arena_[idx].parent) {
      const NodeRec& rec = arena_[idx];
      solver_.set_variable_bounds(rec.var, rec.value, rec.value);
    }
  }

  int pick_branch_variable(const std::vector<double>& values) const {
    int best = -1;
    double best_dist = config_.integrality_tol;
    for (VarId j : binaries_) {
      double v = values[j];
      double dist = std::min(v, 1.0 - v);
      if (dist > best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    return best;
  }

  std::tuple<double, std::vector<double>, bool> polish(const LpSolution& lp) {
    std::vector<std::pair<double, double>> saved;
    saved.reserve(binaries_.size());
    for (VarId j : binaries_) {
      saved.push_back(solver_.variable_bounds(j));
      double r = std::round(lp.values[j]);
      solver_.set_variable_bounds(j, r, r);
    }
    LpSolution polished = solver_.solve();
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
      solver_.set_variable_bounds(binaries_[k], saved[k].first, saved[k].second);
    }
    if (polished.status == LpStatus::Optimal) {
      return {polished.objective, std::move(polished.values), true};
    }
    // Rare numerical fallback: keep the raw integral point.
    return {lp.objective, lp.values, true};
  }

  const MilpModel& model_;
  SolverConfig config_;
  SimplexSolver solver_;
  std::vector<VarId> binaries_;
  std::vector<NodeRec> arena_;
};

// Solves the model to the configured gap via branch-and-bound; a model with
// no (free) binaries reduces to a single LP solve.
inline MipSolution solve_mip(const MilpModel& model, const SolverConfig& config = {}) {
  if (model.num_variables() == 0) throw ModelError("solve_mip: model has no variables");
  BranchAndBound bnb(model, config);
  return bnb.solve();
}

}  // namespace mesc::milp
