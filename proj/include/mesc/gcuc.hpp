#pragma once

#include <string>
#include <vector>

#include "mesc/instance.hpp"
#include "mesc/milp/model.hpp"

namespace mesc::gcuc {

using milp::MilpModel;
using milp::Sense;
using milp::VarId;
using milp::VarKind;

// Generation cost handling: the linear-only mode drops the quadratic term
// outright; piecewise mode approximates c*P^2 with k secant segments over
// [p_min, p_max] (convex, so no extra binaries are needed).
struct CostModel {
  enum class Mode { LinearOnly, Piecewise };
  Mode mode = Mode::LinearOnly;
  int segments = 0;

  void validate() const {
    if (mode == Mode::Piecewise && segments < 1) {
      throw ModelError("cost model: piecewise mode needs at least one segment");
    }
  }
};

// Secant approximation of c*p^2 on uniform breakpoints over [p_min, p_max].
// Exact at breakpoints; between them the error is the parabola-to-chord gap.
inline double piecewise_quadratic_value(double c, double p_min, double p_max, int segments,
                                        double p) {
  if (segments < 1) throw ModelError("piecewise_quadratic_value: segments must be >= 1");
  double width = (p_max - p_min) / segments;
  double value = c * p_min * p_min;
  double remaining = p - p_min;
  for (int k = 0; k < segments && remaining > 0; ++k) {
    double x0 = p_min + k * width;
    double x1 = x0 + width;
    double slope = c * (x0 + x1);  // secant slope of x^2 over [x0, x1]
    double fill = std::min(remaining, width);
    value += slope * fill;
    remaining -= fill;
  }
  return value;
}

// Handles for one committed unit over the horizon; shared by thermal units
// and ship generation so both run through identical commitment logic.
struct UnitHandles {
  std::vector<VarId> on;        // U_t, t = 1..T
  std::vector<VarId> startup;   // SU_t
  std::vector<VarId> shutdown;  // SD_t
  std::vector<VarId> power;     // total output, t = 1..T
};

// Ramp limits, start-up/shutdown logic, minimum up/down windows and initial
// conditions for one unit. Capacity coupling stays with the caller because it
// differs between inland units (P vs U) and ships (per-port output vs O).
inline void emit_unit_commitment_rows(MilpModel& model, const UnitParams& u,
                                      const UnitHandles& h, int horizon,
                                      const std::string& tag) {
  const int T = horizon;
  const double u0 = u.initial_on ? 1.0 : 0.0;
  const double p0 = u.initial_on ? u.initial_output : 0.0;

  for (int t = 1; t <= T; ++t) {
    // Ramping on total output.
    if (t == 1) {
      model.add_constraint({{h.power[0], 1.0}}, Sense::LessEqual, u.ramp_up + p0,
                           "rampup_" + tag + "_t1");
      model.add_constraint({{h.power[0], 1.0}}, Sense::GreaterEqual, p0 - u.ramp_down,
                           "rampdn_" + tag + "_t1");
    } else {
      model.add_constraint({{h.power[t - 1], 1.0}, {h.power[t - 2], -1.0}}, Sense::LessEqual,
                           u.ramp_up, "rampup_" + tag + "_t" + std::to_string(t));
      model.add_constraint({{h.power[t - 2], 1.0}, {h.power[t - 1], -1.0}}, Sense::LessEqual,
                           u.ramp_down, "rampdn_" + tag + "_t" + std::to_string(t));
    }

    // SU - SD = U_t - U_{t-1}; SU + SD <= 1.
    if (t == 1) {
      model.add_constraint({{h.startup[0], 1.0}, {h.shutdown[0], -1.0}, {h.on[0], -1.0}},
                           Sense::Equal, -u0, "logic_" + tag + "_t1");
    } else {
      model.add_constraint({{h.startup[t - 1], 1.0},
                            {h.shutdown[t - 1], -1.0},
                            {h.on[t - 1], -1.0},
                            {h.on[t - 2], 1.0}},
                           Sense::Equal, 0.0, "logic_" + tag + "_t" + std::to_string(t));
    }
    model.add_constraint({{h.startup[t - 1], 1.0}, {h.shutdown[t - 1], 1.0}}, Sense::LessEqual,
                         1.0, "mutex_" + tag + "_t" + std::to_string(t));

    // Minimum up: started units stay on through the window (horizon-truncated).
    {
      int win = std::min(u.min_on, T - t + 1);
      std::vector<std::pair<VarId, double>> terms;
      for (int tau = t; tau < t + win; ++tau) terms.push_back({h.on[tau - 1], 1.0});
      terms.push_back({h.startup[t - 1], -static_cast<double>(win)});
      model.add_constraint(std::move(terms), Sense::GreaterEqual, 0.0,
                           "minup_" + tag + "_t" + std::to_string(t));
    }
    // Minimum down, symmetric on 1 - U.
    {
      int win = std::min(u.min_off, T - t + 1);
      std::vector<std::pair<VarId, double>> terms;
      for (int tau = t; tau < t + win; ++tau) terms.push_back({h.on[tau - 1], -1.0});
      terms.push_back({h.shutdown[t - 1], -static_cast<double>(win)});
      model.add_constraint(std::move(terms), Sense::GreaterEqual, -static_cast<double>(win),
                           "mindn_" + tag + "_t" + std::to_string(t));
    }
  }

  // Initial conditions carried into the horizon: a unit that has not finished
  // its minimum up (down) time stays on (off) for the remainder.
  if (u.initial_on && u.initial_hours < u.min_on) {
    int hold = std::min(u.min_on - u.initial_hours, T);
    for (int t = 1; t <= hold; ++t) model.set_variable_bounds(h.on[t - 1], 1.0, 1.0);
  }
  if (!u.initial_on && u.initial_hours < u.min_off) {
    int hold = std::min(u.min_off - u.initial_hours, T);
    for (int t = 1; t <= hold; ++t) model.set_variable_bounds(h.on[t - 1], 0.0, 0.0);
  }
}

// Per-bus, per-hour generation terms feeding the nodal balance.
class InjectionTable {
 public:
  InjectionTable(int num_buses, int horizon) : horizon_(horizon), terms_(num_buses * horizon) {}

  void add(int bus_pos, int t, VarId var, double coef = 1.0) {
    terms_[bus_pos * horizon_ + (t - 1)].push_back({var, coef});
  }

  const std::vector<std::pair<VarId, double>>& at(int bus_pos, int t) const {
    return terms_[bus_pos * horizon_ + (t - 1)];
  }

 private:
  int horizon_;
  std::vector<std::vector<std::pair<VarId, double>>> terms_;
};

struct GcucVars {
  int horizon = 0;
  // Thermal handles, flattened [g * T + (t-1)].
  std::vector<VarId> unit_on, unit_startup, unit_shutdown, unit_power;
  // Piecewise segment variables [g][t-1][k]; empty in linear-only mode.
  std::vector<std::vector<std::vector<VarId>>> unit_segments;
  // Network handles.
  std::vector<VarId> line_flow;  // [l * T + (t-1)], MW
  std::vector<VarId> bus_angle;  // [m * T + (t-1)], radians
  std::vector<VarId> bus_shed;   // [m * T + (t-1)], MW

  VarId on(int g, int t) const { return unit_on[g * horizon + t - 1]; }
  VarId startup(int g, int t) const { return unit_startup[g * horizon + t - 1]; }
  VarId shutdown(int g, int t) const { return unit_shutdown[g * horizon + t - 1]; }
  VarId power(int g, int t) const { return unit_power[g * horizon + t - 1]; }
  VarId flow(int l, int t) const { return line_flow[l * horizon + t - 1]; }
  VarId angle(int m, int t) const { return bus_angle[m * horizon + t - 1]; }
  VarId shed(int m, int t) const { return bus_shed[m * horizon + t - 1]; }
};

// Thermal-unit variables and constraints: capacity coupling, ramping,
// start-up/shutdown logic and minimum up/down windows per unit and hour.
inline GcucVars build_uc_constraints(const Instance& inst, MilpModel& model) {
  GcucVars vars;
  vars.horizon = inst.horizon;
  const int T = inst.horizon;

  for (const Generator& g : inst.generators) {
    const std::string gid = "g" + std::to_string(g.id);
    UnitHandles h;
    for (int t = 1; t <= T; ++t) {
      h.on.push_back(model.add_variable(VarKind::Binary, 0, 1, "U_" + gid + "_t" + std::to_string(t)));
    }
    for (int t = 1; t <= T; ++t) {
      h.startup.push_back(
          model.add_variable(VarKind::Binary, 0, 1, "SU_" + gid + "_t" + std::to_string(t)));
      h.shutdown.push_back(
          model.add_variable(VarKind::Binary, 0, 1, "SD_" + gid + "_t" + std::to_string(t)));
    }
    for (int t = 1; t <= T; ++t) {
      h.power.push_back(model.add_variable(VarKind::Continuous, 0, g.unit.p_max,
                                           "P_" + gid + "_t" + std::to_string(t)));
    }

    for (int t = 1; t <= T; ++t) {
      model.add_constraint({{h.power[t - 1], 1.0}, {h.on[t - 1], -g.unit.p_max}},
                           Sense::LessEqual, 0.0, "capmax_" + gid + "_t" + std::to_string(t));
      model.add_constraint({{h.power[t - 1], 1.0}, {h.on[t - 1], -g.unit.p_min}},
                           Sense::GreaterEqual, 0.0, "capmin_" + gid + "_t" + std::to_string(t));
    }
    emit_unit_commitment_rows(model, g.unit, h, T, gid);

    vars.unit_on.insert(vars.unit_on.end(), h.on.begin(), h.on.end());
    vars.unit_startup.insert(vars.unit_startup.end(), h.startup.begin(), h.startup.end());
    vars.unit_shutdown.insert(vars.unit_shutdown.end(), h.shutdown.begin(), h.shutdown.end());
    vars.unit_power.insert(vars.unit_power.end(), h.power.begin(), h.power.end());
  }
  return vars;
}

// DC network: flow definition rows, nodal balance with shedding recourse,
// and the angle/flow/shed limits as variable bounds. Flows are computed in
// per-unit and carried in MW via the instance MVA base. Balance is enforced
// at every bus; the injections table carries all generation terms (thermal
// and, when present, ship output at port buses).
inline void build_network_constraints(const Instance& inst, MilpModel& model,
                                      const InjectionTable& injections, GcucVars& vars) {
  const int T = inst.horizon;
  const int B = static_cast<int>(inst.buses.size());
  const int L = static_cast<int>(inst.lines.size());

  // Every bus hosting a generator must contribute injection handles.
  for (const Generator& g : inst.generators) {
    int pos = inst.bus_index(g.bus);
    for (int t = 1; t <= T; ++t) {
      if (injections.at(pos, t).empty()) {
        throw ModelError("network: bus " + std::to_string(g.bus) +
                         " hosts generator " + std::to_string(g.id) +
                         " but has no injection handle at hour " + std::to_string(t));
      }
    }
  }

  for (int l = 0; l < L; ++l) {
    const Line& line = inst.lines[l];
    for (int t = 1; t <= T; ++t) {
      vars.line_flow.push_back(model.add_variable(
          VarKind::Continuous, -line.flow_max, line.flow_max,
          "F_l" + std::to_string(line.id) + "_t" + std::to_string(t)));
    }
  }
  const int ref = inst.reference_bus_index();
  for (int m = 0; m < B; ++m) {
    const Bus& bus = inst.buses[m];
    for (int t = 1; t <= T; ++t) {
      double lim = bus.angle_max;
      VarId theta = model.add_variable(VarKind::Continuous, m == ref ? 0.0 : -lim,
                                       m == ref ? 0.0 : lim,
                                       "theta_b" + std::to_string(bus.id) + "_t" + std::to_string(t));
      vars.bus_angle.push_back(theta);
    }
  }
  for (int m = 0; m < B; ++m) {
    const Bus& bus = inst.buses[m];
    for (int t = 1; t <= T; ++t) {
      double cap = inst.shed_factor_at(m, t) * inst.demand_at(m, t);
      vars.bus_shed.push_back(model.add_variable(
          VarKind::Continuous, 0.0, cap,
          "SHD_b" + std::to_string(bus.id) + "_t" + std::to_string(t)));
    }
  }

  // F_l = base_mva * (theta_from - theta_to) / X_l   (MW)
  for (int l = 0; l < L; ++l) {
    const Line& line = inst.lines[l];
    int from = inst.bus_index(line.from_bus);
    int to = inst.bus_index(line.to_bus);
    double k = inst.base_mva / line.reactance;
    for (int t = 1; t <= T; ++t) {
      model.add_constraint({{vars.flow(l, t), 1.0}, {vars.angle(from, t), -k}, {vars.angle(to, t), k}},
                           Sense::Equal, 0.0,
                           "dcflow_l" + std::to_string(line.id) + "_t" + std::to_string(t));
    }
  }

  // Nodal balance with flow-into-bus positive sign convention.
  for (int m = 0; m < B; ++m) {
    const Bus& bus = inst.buses[m];
    for (int t = 1; t <= T; ++t) {
      std::vector<std::pair<VarId, double>> terms;
      for (int l = 0; l < L; ++l) {
        if (inst.bus_index(inst.lines[l].to_bus) == m) terms.push_back({vars.flow(l, t), 1.0});
        if (inst.bus_index(inst.lines[l].from_bus) == m) terms.push_back({vars.flow(l, t), -1.0});
      }
      for (const auto& [var, coef] : injections.at(m, t)) terms.push_back({var, coef});
      terms.push_back({vars.shed(m, t), 1.0});
      model.add_constraint(std::move(terms), Sense::Equal, inst.demand_at(m, t),
                           "balance_b" + std::to_string(bus.id) + "_t" + std::to_string(t));
    }
  }
}

// Grid objective: commitment + energy cost per unit-hour, start-up and
// shutdown fees, and the shed penalty. Linear-only mode drops the quadratic
// term; piecewise mode splits output into secant segments above p_min.
inline void build_gcuc_objective(const Instance& inst, MilpModel& model, GcucVars& vars,
                                 const CostModel& cost_model) {
  cost_model.validate();
  const int T = inst.horizon;
  const int G = static_cast<int>(inst.generators.size());

  if (cost_model.mode == CostModel::Mode::Piecewise) vars.unit_segments.resize(G);

  for (int g = 0; g < G; ++g) {
    const UnitParams& u = inst.generators[g].unit;
    const std::string gid = "g" + std::to_string(inst.generators[g].id);
    if (cost_model.mode == CostModel::Mode::Piecewise) vars.unit_segments[g].resize(T);
    for (int t = 1; t <= T; ++t) {
      model.add_objective_term(vars.on(g, t), u.cost_a);
      model.add_objective_term(vars.power(g, t), u.cost_b);
      model.add_objective_term(vars.startup(g, t), u.startup_cost);
      model.add_objective_term(vars.shutdown(g, t), u.shutdown_cost);

      if (cost_model.mode == CostModel::Mode::Piecewise && u.cost_c != 0.0) {
        // P = p_min*U + sum of segment fills; each fill priced at its secant slope.
        const int K = cost_model.segments;
        const double width = (u.p_max - u.p_min) / K;
        std::vector<std::pair<VarId, double>> link{{vars.power(g, t), 1.0},
                                                   {vars.on(g, t), -u.p_min}};
        auto& segs = vars.unit_segments[g][t - 1];
        for (int k = 0; k < K; ++k) {
          VarId p_k = model.add_variable(VarKind::Continuous, 0.0, width,
                                         "Pseg" + std::to_string(k) + "_" + gid + "_t" +
                                             std::to_string(t));
          segs.push_back(p_k);
          double x0 = u.p_min + k * width;
          model.add_objective_term(p_k, u.cost_c * (2 * x0 + width));
          model.add_constraint({{p_k, 1.0}, {vars.on(g, t), -width}}, Sense::LessEqual, 0.0,
                               "seg" + std::to_string(k) + "_" + gid + "_t" + std::to_string(t));
          link.push_back({p_k, -1.0});
        }
        model.add_objective_term(vars.on(g, t), u.cost_c * u.p_min * u.p_min);
        model.add_constraint(std::move(link), Sense::Equal, 0.0,
                             "pwlink_" + gid + "_t" + std::to_string(t));
      }
    }
  }

  const int B = static_cast<int>(inst.buses.size());
  for (int m = 0; m < B; ++m) {
    for (int t = 1; t <= T; ++t) model.add_objective_term(vars.shed(m, t), inst.shed_cost);
  }
}

}  // namespace mesc::gcuc
