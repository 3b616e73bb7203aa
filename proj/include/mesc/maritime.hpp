#pragma once

#include <limits>
#include <string>
#include <vector>

#include "mesc/gcuc.hpp"
#include "mesc/instance.hpp"
#include "mesc/milp/model.hpp"

namespace mesc::maritime {

using milp::MilpModel;
using milp::Sense;
using milp::VarId;
using milp::VarKind;

// Deactivation constant for the travel-time windows. Any value >= the horizon
// is valid; rows tighten it per route to the travel time itself, which is the
// smallest constant that still deactivates a window.
struct BigM {
  double value;

  explicit BigM(double v) : value(v) {}
  static BigM for_horizon(int horizon) { return BigM{static_cast<double>(horizon)}; }
};

struct MaritimeVars {
  int horizon = 0;
  int num_ports = 0;
  int num_arcs = 0;
  int num_ships = 0;

  // Port-indexed handles, flattened [(s * P + i) * T + (t-1)].
  std::vector<VarId> at_port;          // V
  std::vector<VarId> waiting;          // W
  std::vector<VarId> operating;        // O
  std::vector<VarId> departed;         // V^D
  std::vector<VarId> entered;          // V^E
  std::vector<VarId> ship_port_power;  // PS_{s,i,t}, MW

  // Arc-indexed handles, flattened [(s * A + a) * T + (t-1)].
  std::vector<VarId> sailing;  // V^S

  // Ship commitment aggregates, flattened [s * T + (t-1)].
  std::vector<VarId> ship_on, ship_startup, ship_shutdown;
  std::vector<VarId> ship_total_power;
  std::vector<std::vector<std::vector<VarId>>> ship_segments;  // piecewise [s][t-1][k]

  // Earliest hour each ship can be present at each port [s * P + i].
  std::vector<int> earliest_presence;

  std::vector<Finding> warnings;

  VarId v(int s, int i, int t) const { return at_port[(s * num_ports + i) * horizon + t - 1]; }
  VarId w(int s, int i, int t) const { return waiting[(s * num_ports + i) * horizon + t - 1]; }
  VarId o(int s, int i, int t) const { return operating[(s * num_ports + i) * horizon + t - 1]; }
  VarId vd(int s, int i, int t) const { return departed[(s * num_ports + i) * horizon + t - 1]; }
  VarId ve(int s, int i, int t) const { return entered[(s * num_ports + i) * horizon + t - 1]; }
  VarId ps(int s, int i, int t) const {
    return ship_port_power[(s * num_ports + i) * horizon + t - 1];
  }
  VarId vsail(int s, int a, int t) const { return sailing[(s * num_arcs + a) * horizon + t - 1]; }
  VarId on(int s, int t) const { return ship_on[s * horizon + t - 1]; }
  VarId startup(int s, int t) const { return ship_startup[s * horizon + t - 1]; }
  VarId shutdown(int s, int t) const { return ship_shutdown[s * horizon + t - 1]; }
  VarId total_power(int s, int t) const { return ship_total_power[s * horizon + t - 1]; }
};

namespace detail {

// Earliest presence hour per port for one ship (hour 0 = initial port), via
// shortest paths with edge weight travel_time + 1 (one hour in port before
// each departure). Used to pin unreachable location variables to zero.
inline std::vector<int> earliest_presence_hours(const Instance& inst, const Ship& ship) {
  const int P = static_cast<int>(inst.ports.size());
  const int unreachable = std::numeric_limits<int>::max() / 4;
  std::vector<int> dist(P, unreachable);
  int init = inst.port_index(ship.initial_port);
  dist[init] = 0;
  for (int pass = 0; pass < P; ++pass) {  // Bellman-Ford, tiny graphs
    bool changed = false;
    for (const auto& [a, b] : inst.route_pairs) {
      int ia = inst.port_index(a), ib = inst.port_index(b);
      int hours = ship.travel_hours(a, b);
      if (hours < 1) continue;
      if (dist[ia] + hours + 1 < dist[ib]) {
        dist[ib] = dist[ia] + hours + 1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return dist;
}

}  // namespace detail

// Location logic: exactly-one-location per hour, presence continuity (a ship
// appears at a port only by staying there or by finishing a sail into it),
// the sail-start precondition, arrival forcing, and the initial-location
// context at hour 1. Also creates the waiting/operating indicators used by
// the start precondition.
inline MaritimeVars build_flow_constraints(const Instance& inst, MilpModel& model) {
  MaritimeVars vars;
  vars.horizon = inst.horizon;
  vars.num_ports = static_cast<int>(inst.ports.size());
  vars.num_arcs = static_cast<int>(inst.route_pairs.size());
  vars.num_ships = static_cast<int>(inst.ships.size());
  const int T = inst.horizon;
  const int P = vars.num_ports;
  const int A = vars.num_arcs;

  vars.earliest_presence.assign(vars.num_ships * std::max(P, 1), 0);

  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);
    const int init = inst.port_index(ship.initial_port);
    if (init < 0) throw ModelError("maritime: ship " + std::to_string(ship.id) +
                                   " has no valid initial port");

    auto ep = detail::earliest_presence_hours(inst, ship);
    for (int i = 0; i < P; ++i) vars.earliest_presence[s * P + i] = ep[i];

    for (int i = 0; i < P; ++i) {
      const std::string pid = "p" + std::to_string(inst.ports[i].id);
      for (int t = 1; t <= T; ++t) {
        vars.at_port.push_back(model.add_variable(
            VarKind::Binary, 0, 1, "V_" + sid + "_" + pid + "_t" + std::to_string(t)));
      }
    }
    for (int a = 0; a < A; ++a) {
      const auto& [pa, pb] = inst.route_pairs[a];
      const std::string rid = "r" + std::to_string(pa) + "_" + std::to_string(pb);
      for (int t = 1; t <= T; ++t) {
        vars.sailing.push_back(model.add_variable(
            VarKind::Binary, 0, 1, "VS_" + sid + "_" + rid + "_t" + std::to_string(t)));
      }
    }
    for (int i = 0; i < P; ++i) {
      const std::string pid = "p" + std::to_string(inst.ports[i].id);
      for (int t = 1; t <= T; ++t) {
        vars.waiting.push_back(model.add_variable(
            VarKind::Binary, 0, 1, "W_" + sid + "_" + pid + "_t" + std::to_string(t)));
        vars.operating.push_back(model.add_variable(
            VarKind::Binary, 0, 1, "O_" + sid + "_" + pid + "_t" + std::to_string(t)));
      }
    }
  }

  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);
    const int init = inst.port_index(ship.initial_port);

    // Exactly one location per hour: sum_i V + sum_arcs V^S = 1.
    for (int t = 1; t <= T; ++t) {
      std::vector<std::pair<VarId, double>> terms;
      for (int i = 0; i < P; ++i) terms.push_back({vars.v(s, i, t), 1.0});
      for (int a = 0; a < A; ++a) terms.push_back({vars.vsail(s, a, t), 1.0});
      model.add_constraint(std::move(terms), Sense::Equal, 1.0,
                           "loc_" + sid + "_t" + std::to_string(t));
    }

    // Presence continuity: V_{j,t} <= V_{j,t-1} + sum of sails into j at t-1.
    for (int j = 0; j < P; ++j) {
      for (int t = 2; t <= T; ++t) {
        std::vector<std::pair<VarId, double>> terms{{vars.v(s, j, t), 1.0},
                                                    {vars.v(s, j, t - 1), -1.0}};
        for (int a = 0; a < A; ++a) {
          if (inst.port_index(inst.route_pairs[a].second) == j) {
            terms.push_back({vars.vsail(s, a, t - 1), -1.0});
          }
        }
        model.add_constraint(std::move(terms), Sense::LessEqual, 0.0,
                             "cont_" + sid + "_p" + std::to_string(inst.ports[j].id) + "_t" +
                                 std::to_string(t));
      }
      // Hour 1: the ship is where it started (it may also leave immediately).
      if (j != init) model.set_variable_bounds(vars.v(s, j, 1), 0.0, 0.0);
    }

    // Sail-start precondition: a sail on (i,j) can begin at t only if the
    // ship was waiting or operating at i in hour t-1.
    for (int a = 0; a < A; ++a) {
      int i = inst.port_index(inst.route_pairs[a].first);
      for (int t = 2; t <= T; ++t) {
        model.add_constraint({{vars.vsail(s, a, t), 1.0},
                              {vars.vsail(s, a, t - 1), -1.0},
                              {vars.w(s, i, t - 1), -1.0},
                              {vars.o(s, i, t - 1), -1.0}},
                             Sense::LessEqual, 0.0,
                             "sailstart_" + sid + "_a" + std::to_string(a) + "_t" +
                                 std::to_string(t));
      }
      // Hour 1 starts are possible only out of the initial port.
      if (i != init) model.set_variable_bounds(vars.vsail(s, a, 1), 0.0, 0.0);
    }

    // Arrival forcing: when a sail on (i,j) ends at t-1 the ship is at j.
    for (int a = 0; a < A; ++a) {
      int j = inst.port_index(inst.route_pairs[a].second);
      for (int t = 2; t <= T; ++t) {
        model.add_constraint({{vars.v(s, j, t), 1.0},
                              {vars.vsail(s, a, t - 1), -1.0},
                              {vars.vsail(s, a, t), 1.0}},
                             Sense::GreaterEqual, 0.0,
                             "arrive_" + sid + "_a" + std::to_string(a) + "_t" +
                                 std::to_string(t));
      }
    }

    // Unreachable (port, hour) pairs pinned to zero.
    for (int i = 0; i < P; ++i) {
      int first = vars.earliest_presence[s * P + i];
      for (int t = 1; t <= T && t < first; ++t) {
        model.set_variable_bounds(vars.v(s, i, t), 0.0, 0.0);
      }
    }
    for (int a = 0; a < A; ++a) {
      int i = inst.port_index(inst.route_pairs[a].first);
      int first_start = vars.earliest_presence[s * P + i] + 1;
      for (int t = 1; t <= T && t < first_start; ++t) {
        model.set_variable_bounds(vars.vsail(s, a, t), 0.0, 0.0);
      }
    }
  }
  return vars;
}

// Entering/departing indicators driven by presence differences, and the
// no-enter-and-depart-in-one-hour rule.
inline void build_arrival_departure_logic(const Instance& inst, MilpModel& model,
                                          MaritimeVars& vars) {
  const int T = inst.horizon;
  const int P = vars.num_ports;

  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);
    for (int i = 0; i < P; ++i) {
      const std::string pid = "p" + std::to_string(inst.ports[i].id);
      for (int t = 1; t <= T; ++t) {
        vars.departed.push_back(model.add_variable(
            VarKind::Binary, 0, 1, "VD_" + sid + "_" + pid + "_t" + std::to_string(t)));
        vars.entered.push_back(model.add_variable(
            VarKind::Binary, 0, 1, "VE_" + sid + "_" + pid + "_t" + std::to_string(t)));
      }
    }
  }

  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);
    const int init = inst.port_index(ship.initial_port);
    for (int i = 0; i < P; ++i) {
      const std::string pid = "p" + std::to_string(inst.ports[i].id);
      for (int t = 1; t <= T; ++t) {
        if (t == 1) {
          // Hour-0 presence is a constant: only the initial port can be left,
          // and nothing can be entered (V at other ports is pinned to 0).
          if (i == init) {
            model.add_constraint({{vars.vd(s, i, 1), 1.0}, {vars.v(s, i, 1), 1.0}},
                                 Sense::GreaterEqual, 1.0, "depart_" + sid + "_" + pid + "_t1");
          }
        } else {
          model.add_constraint({{vars.vd(s, i, t), 1.0},
                                {vars.v(s, i, t - 1), -1.0},
                                {vars.v(s, i, t), 1.0}},
                               Sense::GreaterEqual, 0.0,
                               "depart_" + sid + "_" + pid + "_t" + std::to_string(t));
          model.add_constraint({{vars.ve(s, i, t), 1.0},
                                {vars.v(s, i, t), -1.0},
                                {vars.v(s, i, t - 1), 1.0}},
                               Sense::GreaterEqual, 0.0,
                               "enter_" + sid + "_" + pid + "_t" + std::to_string(t));
        }
        model.add_constraint({{vars.ve(s, i, t), 1.0}, {vars.vd(s, i, t), 1.0}},
                             Sense::LessEqual, 1.0,
                             "inout_" + sid + "_" + pid + "_t" + std::to_string(t));
      }
      // Departure-to-sail linkage: a sail start out of i counts as departing i.
      for (int a = 0; a < vars.num_arcs; ++a) {
        if (inst.port_index(inst.route_pairs[a].first) != i) continue;
        for (int t = 2; t <= T; ++t) {
          model.add_constraint({{vars.vd(s, i, t), 1.0},
                                {vars.vsail(s, a, t), -1.0},
                                {vars.vsail(s, a, t - 1), 1.0}},
                               Sense::GreaterEqual, 0.0,
                               "departsail_" + sid + "_a" + std::to_string(a) + "_t" +
                                   std::to_string(t));
        }
      }
      // Unreachable hours pinned.
      int first = vars.earliest_presence[s * P + i];
      for (int t = 1; t <= T; ++t) {
        if (t < first) model.set_variable_bounds(vars.ve(s, i, t), 0.0, 0.0);
        if (t <= first && !(i == init)) model.set_variable_bounds(vars.vd(s, i, t), 0.0, 0.0);
      }
    }
  }
}

// In-port activity: waiting partitions presence with operating (idle ships
// always accrue the waiting cost), no operation off-port, and operate-on-
// arrival. O <= V follows from the partition row and W's lower bound.
inline void build_operation_constraints(const Instance& inst, MilpModel& model,
                                        MaritimeVars& vars) {
  const int T = inst.horizon;
  const int P = vars.num_ports;
  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);
    for (int i = 0; i < P; ++i) {
      const std::string pid = "p" + std::to_string(inst.ports[i].id);
      for (int t = 1; t <= T; ++t) {
        model.add_constraint(
            {{vars.w(s, i, t), 1.0}, {vars.v(s, i, t), -1.0}, {vars.o(s, i, t), 1.0}},
            Sense::Equal, 0.0, "activity_" + sid + "_" + pid + "_t" + std::to_string(t));
        model.add_constraint({{vars.o(s, i, t), 1.0}, {vars.v(s, i, t), -1.0}},
                             Sense::LessEqual, 0.0,
                             "onport_" + sid + "_" + pid + "_t" + std::to_string(t));
        model.add_constraint({{vars.o(s, i, t), 1.0}, {vars.ve(s, i, t), -1.0}},
                             Sense::GreaterEqual, 0.0,
                             "runonarrival_" + sid + "_" + pid + "_t" + std::to_string(t));
      }
    }
  }
}

// Travel times: a sail start on (i,j) forces exactly T_s^ij consecutive
// sailing hours (deactivated big-M window, tightened per route), the printed
// anti-extension row keeps runs from stretching, and departures too close to
// the end of the horizon are forbidden so ships finish in a port.
inline void build_travel_time_constraints(const Instance& inst, MilpModel& model,
                                          MaritimeVars& vars, const BigM& big_m) {
  const int T = inst.horizon;
  if (big_m.value < T) {
    throw ModelError("maritime: big-M must be at least the horizon length");
  }
  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);
    for (int a = 0; a < vars.num_arcs; ++a) {
      const auto& [pa, pb] = inst.route_pairs[a];
      const int hours = ship.travel_hours(pa, pb);
      const std::string rid = "a" + std::to_string(a);

      if (hours > T - 1) {
        vars.warnings.push_back(Finding{
            "route-unusable", "ship " + std::to_string(ship.id) + ": route (" +
                                  std::to_string(pa) + "," + std::to_string(pb) +
                                  ") travel time " + std::to_string(hours) +
                                  " cannot complete within the horizon"});
        for (int t = 1; t <= T; ++t) model.set_variable_bounds(vars.vsail(s, a, t), 0.0, 0.0);
        continue;
      }

      const double m_row = std::min(big_m.value, static_cast<double>(hours));
      for (int t = 1; t <= T; ++t) {
        if (t <= T - hours) {
          // Window: sum_{tau in [t, t+hours-1]} VS >= hours - M(1 - start_t).
          std::vector<std::pair<VarId, double>> terms;
          for (int tau = t; tau < t + hours; ++tau) {
            double coef = 1.0;
            if (tau == t) coef += -m_row;  // start term folds into the window sum
            terms.push_back({vars.vsail(s, a, tau), coef});
          }
          if (t >= 2) terms.push_back({vars.vsail(s, a, t - 1), m_row});
          model.add_constraint(std::move(terms), Sense::GreaterEqual,
                               static_cast<double>(hours) - m_row,
                               "sailrun_" + sid + "_" + rid + "_t" + std::to_string(t));
        } else {
          // End-of-horizon rule: no start that cannot finish in a port.
          if (t == 1) {
            model.set_variable_bounds(vars.vsail(s, a, 1), 0.0, 0.0);
          } else {
            model.add_constraint({{vars.vsail(s, a, t), 1.0}, {vars.vsail(s, a, t - 1), -1.0}},
                                 Sense::LessEqual, 0.0,
                                 "nolatestart_" + sid + "_" + rid + "_t" + std::to_string(t));
          }
        }
        // Anti-extension: two sailing hours exactly the travel time apart
        // cannot both belong to a feasible plan.
        if (t > hours) {
          model.add_constraint({{vars.vsail(s, a, t), 1.0}, {vars.vsail(s, a, t - hours), 1.0}},
                               Sense::LessEqual, 1.0,
                               "sailsep_" + sid + "_" + rid + "_t" + std::to_string(t));
        }
      }
    }
  }
}

// Port throughput: operating ships per port-hour capped by POC; departures
// capped by PDC, either summed over the horizon per (port, ship) as printed
// or as a per-hour presence cap when the instance selects that reading.
inline void build_port_capacity_constraints(const Instance& inst, MilpModel& model,
                                            MaritimeVars& vars) {
  const int T = inst.horizon;
  const int P = vars.num_ports;
  if (vars.num_ships == 0) return;
  for (int i = 0; i < P; ++i) {
    const Port& port = inst.ports[i];
    for (int t = 1; t <= T; ++t) {
      std::vector<std::pair<VarId, double>> terms;
      for (int s = 0; s < vars.num_ships; ++s) terms.push_back({vars.o(s, i, t), 1.0});
      model.add_constraint(std::move(terms), Sense::LessEqual,
                           static_cast<double>(port.operating_capacity),
                           "poc_p" + std::to_string(port.id) + "_t" + std::to_string(t));
    }
    if (inst.berth_rule == BerthRule::PerShipTotal) {
      for (int s = 0; s < vars.num_ships; ++s) {
        std::vector<std::pair<VarId, double>> terms;
        for (int t = 1; t <= T; ++t) terms.push_back({vars.vd(s, i, t), 1.0});
        model.add_constraint(std::move(terms), Sense::LessEqual,
                             static_cast<double>(port.berth_capacity),
                             "pdc_p" + std::to_string(port.id) + "_s" +
                                 std::to_string(inst.ships[s].id));
      }
    } else {
      for (int t = 1; t <= T; ++t) {
        std::vector<std::pair<VarId, double>> terms;
        for (int s = 0; s < vars.num_ships; ++s) terms.push_back({vars.v(s, i, t), 1.0});
        model.add_constraint(std::move(terms), Sense::LessEqual,
                             static_cast<double>(port.berth_capacity),
                             "pdc_p" + std::to_string(port.id) + "_t" + std::to_string(t));
      }
    }
  }
}

// Ship generation: per-port output coupled to the operating indicator, the
// commitment aggregate U_s = sum_i O, and the same ramping/start-stop/min-time
// machinery inland units get, applied to the ship's total output.
inline void build_ship_generation(const Instance& inst, MilpModel& model, MaritimeVars& vars) {
  const int T = inst.horizon;
  const int P = vars.num_ports;

  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);
    for (int i = 0; i < P; ++i) {
      const std::string pid = "p" + std::to_string(inst.ports[i].id);
      for (int t = 1; t <= T; ++t) {
        vars.ship_port_power.push_back(
            model.add_variable(VarKind::Continuous, 0.0, ship.unit.p_max,
                               "PS_" + sid + "_" + pid + "_t" + std::to_string(t)));
      }
    }
    for (int t = 1; t <= T; ++t) {
      vars.ship_on.push_back(
          model.add_variable(VarKind::Binary, 0, 1, "Us_" + sid + "_t" + std::to_string(t)));
    }
    for (int t = 1; t <= T; ++t) {
      vars.ship_startup.push_back(
          model.add_variable(VarKind::Binary, 0, 1, "SUs_" + sid + "_t" + std::to_string(t)));
      vars.ship_shutdown.push_back(
          model.add_variable(VarKind::Binary, 0, 1, "SDs_" + sid + "_t" + std::to_string(t)));
    }
    for (int t = 1; t <= T; ++t) {
      vars.ship_total_power.push_back(
          model.add_variable(VarKind::Continuous, 0.0, ship.unit.p_max,
                             "PStot_" + sid + "_t" + std::to_string(t)));
    }
  }

  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);

    for (int i = 0; i < P; ++i) {
      const std::string pid = "p" + std::to_string(inst.ports[i].id);
      for (int t = 1; t <= T; ++t) {
        model.add_constraint(
            {{vars.ps(s, i, t), 1.0}, {vars.o(s, i, t), -ship.unit.p_max}}, Sense::LessEqual, 0.0,
            "pscapmax_" + sid + "_" + pid + "_t" + std::to_string(t));
        model.add_constraint(
            {{vars.ps(s, i, t), 1.0}, {vars.o(s, i, t), -ship.unit.p_min}}, Sense::GreaterEqual,
            0.0, "pscapmin_" + sid + "_" + pid + "_t" + std::to_string(t));
      }
    }

    gcuc::UnitHandles h;
    for (int t = 1; t <= T; ++t) {
      // U_s,t = sum_i O_{i,s,t} (at most one port by the location partition).
      std::vector<std::pair<VarId, double>> agg{{vars.on(s, t), 1.0}};
      for (int i = 0; i < P; ++i) agg.push_back({vars.o(s, i, t), -1.0});
      model.add_constraint(std::move(agg), Sense::Equal, 0.0,
                           "shipon_" + sid + "_t" + std::to_string(t));

      std::vector<std::pair<VarId, double>> tot{{vars.total_power(s, t), 1.0}};
      for (int i = 0; i < P; ++i) tot.push_back({vars.ps(s, i, t), -1.0});
      model.add_constraint(std::move(tot), Sense::Equal, 0.0,
                           "shippow_" + sid + "_t" + std::to_string(t));

      h.on.push_back(vars.on(s, t));
      h.startup.push_back(vars.startup(s, t));
      h.shutdown.push_back(vars.shutdown(s, t));
      h.power.push_back(vars.total_power(s, t));
    }
    gcuc::emit_unit_commitment_rows(model, ship.unit, h, T, "ship" + std::to_string(ship.id));
  }
}

// Ship objective: entering, departure, waiting and sailing fees plus the
// ship generation cost in the same form as the grid units.
inline void build_ship_objective(const Instance& inst, MilpModel& model, MaritimeVars& vars,
                                 const gcuc::CostModel& cost_model = {}) {
  cost_model.validate();
  const int T = inst.horizon;
  const int P = vars.num_ports;
  if (cost_model.mode == gcuc::CostModel::Mode::Piecewise) {
    vars.ship_segments.resize(vars.num_ships);
  }

  for (int s = 0; s < vars.num_ships; ++s) {
    const Ship& ship = inst.ships[s];
    const std::string sid = "s" + std::to_string(ship.id);
    for (int i = 0; i < P; ++i) {
      for (int t = 1; t <= T; ++t) {
        model.add_objective_term(vars.ve(s, i, t), ship.entering_cost);
        model.add_objective_term(vars.vd(s, i, t), ship.departure_cost);
        model.add_objective_term(vars.w(s, i, t), ship.waiting_cost);
      }
    }
    for (int a = 0; a < vars.num_arcs; ++a) {
      for (int t = 1; t <= T; ++t) {
        model.add_objective_term(vars.vsail(s, a, t), ship.sailing_cost);
      }
    }
    if (cost_model.mode == gcuc::CostModel::Mode::Piecewise) {
      vars.ship_segments[s].resize(T);
    }
    for (int t = 1; t <= T; ++t) {
      model.add_objective_term(vars.on(s, t), ship.unit.cost_a);
      model.add_objective_term(vars.total_power(s, t), ship.unit.cost_b);
      model.add_objective_term(vars.startup(s, t), ship.unit.startup_cost);
      model.add_objective_term(vars.shutdown(s, t), ship.unit.shutdown_cost);

      if (cost_model.mode == gcuc::CostModel::Mode::Piecewise && ship.unit.cost_c != 0.0) {
        const int K = cost_model.segments;
        const double width = (ship.unit.p_max - ship.unit.p_min) / K;
        std::vector<std::pair<VarId, double>> link{{vars.total_power(s, t), 1.0},
                                                   {vars.on(s, t), -ship.unit.p_min}};
        auto& segs = vars.ship_segments[s][t - 1];
        for (int k = 0; k < K; ++k) {
          VarId p_k = model.add_variable(
              VarKind::Continuous, 0.0, width,
              "PSseg" + std::to_string(k) + "_" + sid + "_t" + std::to_string(t));
          segs.push_back(p_k);
          double x0 = ship.unit.p_min + k * width;
          model.add_objective_term(p_k, ship.unit.cost_c * (2 * x0 + width));
          model.add_constraint({{p_k, 1.0}, {vars.on(s, t), -width}}, Sense::LessEqual, 0.0,
                               "psseg" + std::to_string(k) + "_" + sid + "_t" + std::to_string(t));
          link.push_back({p_k, -1.0});
        }
        model.add_objective_term(vars.on(s, t), ship.unit.cost_c * ship.unit.p_min * ship.unit.p_min);
        model.add_constraint(std::move(link), Sense::Equal, 0.0,
                             "pspwlink_" + sid + "_t" + std::to_string(t));
      }
    }
  }
}

// Full maritime block in build order.
inline MaritimeVars build_maritime(const Instance& inst, MilpModel& model,
                                   const BigM& big_m, const gcuc::CostModel& cost_model = {}) {
  MaritimeVars vars = build_flow_constraints(inst, model);
  build_arrival_departure_logic(inst, model, vars);
  build_operation_constraints(inst, model, vars);
  build_travel_time_constraints(inst, model, vars, big_m);
  build_port_capacity_constraints(inst, model, vars);
  build_ship_generation(inst, model, vars);
  build_ship_objective(inst, model, vars, cost_model);
  return vars;
}

}  // namespace mesc::maritime
