#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mesc/errors.hpp"

namespace mesc::milp {

using VarId = int;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind : std::uint8_t { Continuous, Binary };

enum class Sense : std::uint8_t { LessEqual, Equal, GreaterEqual };

struct Variable {
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = kInfinity;
  std::string name;
};

struct LinearConstraint {
  std::vector<std::pair<VarId, double>> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  std::string name;
};

// Solver-agnostic MILP in minimization form: linear objective, linear
// constraints, box bounds, binary or continuous variables.
class MilpModel {
 public:
  VarId add_variable(VarKind kind, double lower, double upper, std::string name) {
    if (!(lower <= upper)) {
      throw ModelError("variable '" + name + "': lower bound " + std::to_string(lower) +
                       " exceeds upper bound " + std::to_string(upper));
    }
    if (kind == VarKind::Binary && (lower < 0.0 || upper > 1.0)) {
      throw ModelError("binary variable '" + name + "': bounds must lie within [0,1]");
    }
    variables_.push_back(Variable{kind, lower, upper, std::move(name)});
    objective_.push_back(0.0);
    return static_cast<VarId>(variables_.size() - 1);
  }

  void add_constraint(std::vector<std::pair<VarId, double>> terms, Sense sense, double rhs,
                      std::string name = {}) {
    std::unordered_set<VarId> seen;
    for (const auto& [id, coef] : terms) {
      if (id < 0 || id >= static_cast<VarId>(variables_.size())) {
        throw ModelError("constraint '" + name + "': unknown variable id " + std::to_string(id));
      }
      if (!std::isfinite(coef)) {
        throw ModelError("constraint '" + name + "': non-finite coefficient");
      }
      if (!seen.insert(id).second) {
        throw ModelError("constraint '" + name + "': duplicate variable id " + std::to_string(id));
      }
    }
    if (!std::isfinite(rhs)) {
      throw ModelError("constraint '" + name + "': non-finite right-hand side");
    }
    constraints_.push_back(LinearConstraint{std::move(terms), sense, rhs, std::move(name)});
  }

  void add_objective_term(VarId id, double coef) {
    check_var(id);
    if (!std::isfinite(coef)) throw ModelError("objective: non-finite coefficient");
    objective_[id] += coef;
  }

  void add_objective_constant(double value) { objective_constant_ += value; }

  void set_variable_bounds(VarId id, double lower, double upper) {
    check_var(id);
    if (!(lower <= upper)) {
      throw ModelError("variable '" + variables_[id].name + "': lower bound exceeds upper bound");
    }
    variables_[id].lower = lower;
    variables_[id].upper = upper;
  }

  const Variable& variable(VarId id) const {
    check_var(id);
    return variables_[id];
  }

  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  const std::vector<double>& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }

  std::vector<VarId> binary_variables() const {
    std::vector<VarId> out;
    for (VarId j = 0; j < static_cast<VarId>(variables_.size()); ++j) {
      if (variables_[j].kind == VarKind::Binary) out.push_back(j);
    }
    return out;
  }

  double evaluate_objective(const std::vector<double>& values) const {
    double total = objective_constant_;
    for (std::size_t j = 0; j < objective_.size(); ++j) {
      if (objective_[j] != 0.0) total += objective_[j] * values[j];
    }
    return total;
  }

 private:
  void check_var(VarId id) const {
    if (id < 0 || id >= static_cast<VarId>(variables_.size())) {
      throw ModelError("unknown variable id " + std::to_string(id));
    }
  }

  std::vector<Variable> variables_;
  std::vector<LinearConstraint> constraints_;
  std::vector<double> objective_;
  double objective_constant_ = 0.0;
};

// Returns a copy of the model with the given binary variables pinned to their
// assigned values. Everything else is unchanged.
inline MilpModel fix_binaries(const MilpModel& model,
                              const std::unordered_map<VarId, int>& assignment) {
  MilpModel fixed = model;
  for (const auto& [id, value] : assignment) {
    const Variable& var = model.variable(id);
    if (var.kind != VarKind::Binary) {
      throw ModelError("fix_binaries: variable '" + var.name + "' is not binary");
    }
    if (value != 0 && value != 1) {
      throw ModelError("fix_binaries: assignment for '" + var.name + "' must be 0 or 1");
    }
    fixed.set_variable_bounds(id, value, value);
  }
  return fixed;
}

enum class SolveStatus : std::uint8_t { Optimal, FeasibleGap, Infeasible, TimeLimit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleGap: return "feasible-gap";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::TimeLimit: return "time-limit";
  }
  return "unknown";
}

struct SolverConfig {
  double relative_gap = 0.0;          // stop when (incumbent - bound)/|incumbent| <= gap
  double time_limit_seconds = 2500.0;
  long node_limit = -1;               // < 0: unlimited
  std::string branching = "most-fractional";
  double feasibility_tol = 1e-7;
  double integrality_tol = 1e-6;
  std::string search = "best-bound-dive";
  int threads = 1;

  void validate() const {
    if (relative_gap < 0 || feasibility_tol < 0 || integrality_tol < 0) {
      throw ModelError("solver config: tolerances must be non-negative");
    }
    if (time_limit_seconds < 0) throw ModelError("solver config: negative time limit");
  }
};

struct MipSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;
  double objective = kInfinity;
  double best_bound = -kInfinity;
  double relative_gap = kInfinity;
  long nodes = 0;
  long simplex_iterations = 0;
  double wall_seconds = 0.0;

  bool has_solution() const {
    return status == SolveStatus::Optimal || status == SolveStatus::FeasibleGap ||
           (status == SolveStatus::TimeLimit && !values.empty());
  }
};

}  // namespace mesc::milp
