#pragma once

// Independent feasibility checker, cost recomputation and brute-force oracle.
// Everything here re-derives the rules arithmetically from the decoded
// timeline and deliberately shares no code with the model-building modules.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mesc/instance.hpp"
#include "mesc/milp/model.hpp"
#include "mesc/milp/simplex.hpp"
#include "mesc/schedule.hpp"

namespace mesc::validator {

struct FamilyResult {
  std::string family;
  double max_violation = 0.0;
  long violations = 0;
  std::vector<std::string> details;  // capped; first offenders with location
};

struct ValidationReport {
  std::vector<FamilyResult> families;
  CostBreakdown recomputed;

  double max_violation() const {
    double worst = 0.0;
    for (const auto& f : families) worst = std::max(worst, f.max_violation);
    return worst;
  }
  bool pass(double tol = 1e-6) const { return max_violation() <= tol; }
  const FamilyResult* family(const std::string& name) const {
    for (const auto& f : families) {
      if (f.family == name) return &f;
    }
    return nullptr;
  }
};

namespace detail {

constexpr double kEps = 1e-9;

class FamilyCollector {
 public:
  explicit FamilyCollector(std::string name) { result_.family = std::move(name); }

  void report(double violation, const std::string& where) {
    if (violation <= kEps) return;
    result_.max_violation = std::max(result_.max_violation, violation);
    ++result_.violations;
    if (result_.details.size() < 20) {
      result_.details.push_back(where + ": " + std::to_string(violation));
    }
  }

  FamilyResult take() { return std::move(result_); }

 private:
  FamilyResult result_;
};

// Timeline view of one ship with an hour-0 context row.
struct ShipTrack {
  const Ship* ship = nullptr;
  const std::vector<ShipHour>* hours = nullptr;
  int initial_port = 0;

  bool at_port(int t, int port_id) const {  // t = 0..T
    if (t == 0) return port_id == initial_port;
    const ShipHour& h = (*hours)[t - 1];
    return !h.sailing && h.port_id == port_id;
  }
  int port_at(int t) const {  // -1 while sailing
    if (t == 0) return initial_port;
    const ShipHour& h = (*hours)[t - 1];
    return h.sailing ? -1 : h.port_id;
  }
  bool sailing(int t) const { return t >= 1 && (*hours)[t - 1].sailing; }
  int operating(int t) const {
    if (t == 0) return ship->unit.initial_on ? 1 : 0;
    return (*hours)[t - 1].operating;
  }
  double power(int t) const {
    if (t == 0) return ship->unit.initial_on ? ship->unit.initial_output : 0.0;
    return (*hours)[t - 1].power;
  }
};

// Secant interpolation of c*p^2 on k uniform segments; re-derived here so the
// cost recomputation does not lean on the formulation code.
inline double secant_quadratic(double c, double p_min, double p_max, int segments, double p) {
  double width = (p_max - p_min) / segments;
  double value = c * p_min * p_min;
  double remaining = p - p_min;
  for (int k = 0; k < segments && remaining > 0; ++k) {
    double x0 = p_min + k * width;
    double fill = std::min(remaining, width);
    value += c * (2 * x0 + width) * fill;
    remaining -= fill;
  }
  return value;
}

inline int piecewise_segments(const std::string& cost_mode) {
  if (cost_mode.rfind("piecewise-", 0) == 0) return std::stoi(cost_mode.substr(10));
  return 0;
}

// Commitment run-length scan shared by generators and ships: every maximal
// on-run must last at least min_on hours unless cut short by the horizon or
// inherited from the initial state; symmetric for off-runs.
inline void check_min_times(FamilyCollector& fam, const std::string& who, const UnitParams& u,
                            const std::vector<int>& on, int T) {
  int t = 1;
  while (t <= T) {
    int state = on[t - 1];
    int start = t;
    while (t + 1 <= T && on[t] == state) ++t;
    int end = t;
    int run = end - start + 1;
    bool inherited = (start == 1) && ((u.initial_on ? 1 : 0) == state);
    bool truncated = (end == T);
    if (inherited) {
      // Carry-over: hours already spent in this state count toward the rule.
      run += u.initial_hours;
    }
    int need = state == 1 ? u.min_on : u.min_off;
    if (!truncated && run < need) {
      fam.report(static_cast<double>(need - run),
                 who + (state == 1 ? " on-run" : " off-run") + " ending hour " +
                     std::to_string(end));
    }
    ++t;
  }
}

}  // namespace detail

// Itemized cost recomputation from the decoded timeline alone. Indicator
// events are re-derived from presence transitions rather than trusted.
inline CostBreakdown recompute_cost(const Instance& inst, const ScheduleReport& rep) {
  const int T = inst.horizon;
  CostBreakdown out;
  const int segments = detail::piecewise_segments(rep.cost_mode);

  for (std::size_t g = 0; g < inst.generators.size() && g < rep.units.size(); ++g) {
    const UnitParams& u = inst.generators[g].unit;
    int prev_on = u.initial_on ? 1 : 0;
    for (int t = 1; t <= T; ++t) {
      const UnitHour& h = rep.units[g][t - 1];
      out.grid_energy += u.cost_a * h.on + u.cost_b * h.power;
      if (segments > 0 && u.cost_c != 0.0 && h.on) {
        out.grid_energy += detail::secant_quadratic(u.cost_c, u.p_min, u.p_max, segments, h.power);
      }
      if (h.on > prev_on) out.grid_startup += u.startup_cost;
      if (h.on < prev_on) out.grid_shutdown += u.shutdown_cost;
      prev_on = h.on;
    }
  }

  for (std::size_t m = 0; m < rep.shed.size(); ++m) {
    for (double v : rep.shed[m]) out.shed_penalty += inst.shed_cost * v;
  }

  for (std::size_t s = 0; s < rep.ships.size() && s < inst.ships.size(); ++s) {
    const Ship& ship = inst.ships[s];
    const UnitParams& u = ship.unit;
    detail::ShipTrack tr{&ship, &rep.ships[s], ship.initial_port};
    int prev_on = u.initial_on ? 1 : 0;
    for (int t = 1; t <= T; ++t) {
      const ShipHour& h = rep.ships[s][t - 1];
      int on = h.sailing ? 0 : h.operating;
      out.ship_energy += u.cost_a * on + u.cost_b * h.power;
      if (segments > 0 && u.cost_c != 0.0 && on) {
        out.ship_energy += detail::secant_quadratic(u.cost_c, u.p_min, u.p_max, segments, h.power);
      }
      if (on > prev_on) out.ship_startup += u.startup_cost;
      if (on < prev_on) out.ship_shutdown += u.shutdown_cost;
      prev_on = on;

      if (h.sailing) out.ship_sailing += ship.sailing_cost;
      int prev_port = tr.port_at(t - 1);
      int cur_port = tr.port_at(t);
      if (cur_port >= 0 && cur_port != prev_port) out.ship_entering += ship.entering_cost;
      if (prev_port >= 0 && cur_port != prev_port) out.ship_departure += ship.departure_cost;
      if (cur_port >= 0 && !on) out.ship_waiting += ship.waiting_cost;
    }
  }
  return out;
}

// Evaluates every constraint family arithmetically from the decoded
// timeline; no MILP machinery involved. Violations carry their location and
// magnitude in natural units (MW, radians, counts).
inline ValidationReport check_feasibility(const Instance& inst, const ScheduleReport& rep) {
  const int T = inst.horizon;
  if (rep.horizon != T) throw ModelError("validator: report horizon does not match instance");
  if (rep.units.size() != inst.generators.size()) {
    throw ModelError("validator: report has " + std::to_string(rep.units.size()) +
                     " units, instance has " + std::to_string(inst.generators.size()));
  }
  if (!rep.ships.empty() && rep.ships.size() != inst.ships.size()) {
    throw ModelError("validator: report ship count does not match instance");
  }
  const bool with_ships = !rep.ships.empty();
  if (rep.flows.size() != inst.lines.size() || rep.angles.size() != inst.buses.size() ||
      rep.shed.size() != inst.buses.size()) {
    throw ModelError("validator: report network dimensions do not match instance");
  }

  std::vector<detail::ShipTrack> tracks;
  if (with_ships) {
    for (std::size_t s = 0; s < inst.ships.size(); ++s) {
      if (static_cast<int>(rep.ships[s].size()) != T) {
        throw ModelError("validator: ship timeline does not span the horizon");
      }
      tracks.push_back(detail::ShipTrack{&inst.ships[s], &rep.ships[s],
                                         inst.ships[s].initial_port});
    }
  }

  ValidationReport out;

  // --- flow logic: well-formed locations and legal transitions -------------
  {
    detail::FamilyCollector fam("flow-logic");
    for (std::size_t s = 0; s < tracks.size(); ++s) {
      const auto& tr = tracks[s];
      const std::string sid = "ship " + std::to_string(tr.ship->id);
      for (int t = 1; t <= T; ++t) {
        const ShipHour& h = (*tr.hours)[t - 1];
        if (!h.sailing && inst.port_index(h.port_id) < 0) {
          fam.report(1.0, sid + " hour " + std::to_string(t) + " has no valid location");
          continue;
        }
        if (h.sailing) {
          bool starts = !tr.sailing(t - 1);
          const ShipHour* prev = t >= 2 ? &(*tr.hours)[t - 2] : nullptr;
          if (starts) {
            // Must depart the port occupied in the previous hour.
            int from = tr.port_at(t - 1);
            if (from < 0 || from != h.arc_from) {
              fam.report(1.0, sid + " hour " + std::to_string(t) +
                                  " starts sailing without leaving its port");
            }
          } else if (prev && (prev->arc_from != h.arc_from || prev->arc_to != h.arc_to)) {
            fam.report(1.0, sid + " hour " + std::to_string(t) + " switches arc mid-sail");
          }
          bool known_arc = false;
          for (const auto& [a, b] : inst.route_pairs) {
            known_arc |= (a == h.arc_from && b == h.arc_to);
          }
          if (!known_arc) {
            fam.report(1.0, sid + " hour " + std::to_string(t) + " sails an unknown route");
          }
        } else {
          // Presence must be explained by staying or by a completed sail.
          int here = h.port_id;
          bool stayed = tr.at_port(t - 1, here);
          bool arrived = t >= 2 && tr.sailing(t - 1) && (*tr.hours)[t - 2].arc_to == here;
          if (!stayed && !arrived) {
            fam.report(1.0, sid + " hour " + std::to_string(t) + " appears at port " +
                                std::to_string(here) + " without sailing there");
          }
        }
      }
    }
    out.families.push_back(fam.take());
  }

  // --- arrival / departure indicators --------------------------------------
  {
    detail::FamilyCollector fam("arrival-departure");
    for (const auto& tr : tracks) {
      const std::string sid = "ship " + std::to_string(tr.ship->id);
      for (int t = 1; t <= T; ++t) {
        const ShipHour& h = (*tr.hours)[t - 1];
        int prev_port = tr.port_at(t - 1);
        int cur_port = tr.port_at(t);
        bool rise = cur_port >= 0 && cur_port != prev_port;
        bool drop = prev_port >= 0 && cur_port != prev_port;
        if (rise && h.entered < 1) {
          fam.report(1.0, sid + " enters port " + std::to_string(cur_port) + " at hour " +
                              std::to_string(t) + " without the entering indicator");
        }
        if (drop && h.departed < 1) {
          fam.report(1.0, sid + " leaves port " + std::to_string(prev_port) + " at hour " +
                              std::to_string(t) + " without the departure indicator");
        }
        // Enter and depart can only collide at the same port when neither is
        // explained by a transition; a real transition splits them across two
        // distinct ports.
        if (!rise && !drop && h.entered + h.departed > 1) {
          fam.report(static_cast<double>(h.entered + h.departed - 1),
                     sid + " hour " + std::to_string(t) + " marks entering and departing at once");
        }
      }
    }
    out.families.push_back(fam.take());
  }

  // --- operation: activity partition, no generation off-port, run-on-arrival
  {
    detail::FamilyCollector fam("operation");
    for (const auto& tr : tracks) {
      const std::string sid = "ship " + std::to_string(tr.ship->id);
      for (int t = 1; t <= T; ++t) {
        const ShipHour& h = (*tr.hours)[t - 1];
        if (h.sailing) {
          if (h.operating > 0 || h.waiting > 0) {
            fam.report(1.0, sid + " hour " + std::to_string(t) + " operates or waits while sailing");
          }
          if (std::abs(h.power) > 1e-9) {
            fam.report(std::abs(h.power),
                       sid + " hour " + std::to_string(t) + " generates while sailing");
          }
        } else {
          double part = std::abs(1.0 - h.operating - h.waiting);
          if (part > 1e-9) {
            fam.report(part, sid + " hour " + std::to_string(t) +
                                 " activity does not partition presence");
          }
          if (h.operating < h.entered) {
            fam.report(static_cast<double>(h.entered - h.operating),
                       sid + " hour " + std::to_string(t) + " does not run on arrival");
          }
        }
      }
    }
    out.families.push_back(fam.take());
  }

  // --- travel times: maximal sail runs are exact and end at the destination
  {
    detail::FamilyCollector fam("travel-time");
    for (const auto& tr : tracks) {
      const std::string sid = "ship " + std::to_string(tr.ship->id);
      int t = 1;
      while (t <= T) {
        if (!tr.sailing(t)) {
          ++t;
          continue;
        }
        int start = t;
        const ShipHour& first = (*tr.hours)[start - 1];
        while (t + 1 <= T && tr.sailing(t + 1) && (*tr.hours)[t].arc_from == first.arc_from &&
               (*tr.hours)[t].arc_to == first.arc_to) {
          ++t;
        }
        int end = t;
        int run = end - start + 1;
        int expect = tr.ship->travel_hours(first.arc_from, first.arc_to);
        if (expect >= 1 && run != expect) {
          fam.report(std::abs(run - expect),
                     sid + " sail run on (" + std::to_string(first.arc_from) + "," +
                         std::to_string(first.arc_to) + ") hours " + std::to_string(start) + "-" +
                         std::to_string(end) + " lasts " + std::to_string(run) + " not " +
                         std::to_string(expect));
        }
        if (end < T && tr.port_at(end + 1) != first.arc_to) {
          fam.report(1.0, sid + " does not enter port " + std::to_string(first.arc_to) +
                              " after the sail ending hour " + std::to_string(end));
        }
        ++t;
      }
    }
    out.families.push_back(fam.take());
  }

  // --- port capacities ------------------------------------------------------
  {
    detail::FamilyCollector fam("port-capacity");
    for (const Port& port : inst.ports) {
      for (int t = 1; t <= T; ++t) {
        int operating = 0, present = 0;
        for (const auto& tr : tracks) {
          if (tr.at_port(t, port.id)) {
            ++present;
            operating += tr.operating(t);
          }
        }
        if (operating > port.operating_capacity) {
          fam.report(static_cast<double>(operating - port.operating_capacity),
                     "port " + std::to_string(port.id) + " hour " + std::to_string(t) +
                         " exceeds operating capacity");
        }
        if (inst.berth_rule == BerthRule::PerHourPresence && present > port.berth_capacity) {
          fam.report(static_cast<double>(present - port.berth_capacity),
                     "port " + std::to_string(port.id) + " hour " + std::to_string(t) +
                         " exceeds berth capacity");
        }
      }
      if (inst.berth_rule == BerthRule::PerShipTotal) {
        for (const auto& tr : tracks) {
          int departures = 0;
          for (int t = 1; t <= T; ++t) {
            if (tr.port_at(t - 1) == port.id && tr.port_at(t) != port.id) ++departures;
          }
          if (departures > port.berth_capacity) {
            fam.report(static_cast<double>(departures - port.berth_capacity),
                       "port " + std::to_string(port.id) + " ship " +
                           std::to_string(tr.ship->id) + " exceeds berth capacity");
          }
        }
      }
    }
    out.families.push_back(fam.take());
  }

  // --- generator and ship output limits -------------------------------------
  {
    detail::FamilyCollector fam("generator-limits");
    for (std::size_t g = 0; g < inst.generators.size(); ++g) {
      const UnitParams& u = inst.generators[g].unit;
      const std::string gid = "generator " + std::to_string(inst.generators[g].id);
      for (int t = 1; t <= T; ++t) {
        const UnitHour& h = rep.units[g][t - 1];
        fam.report(h.power - u.p_max * h.on, gid + " hour " + std::to_string(t) + " above p_max");
        fam.report(u.p_min * h.on - h.power, gid + " hour " + std::to_string(t) + " below p_min");
      }
    }
    for (const auto& tr : tracks) {
      const UnitParams& u = tr.ship->unit;
      const std::string sid = "ship " + std::to_string(tr.ship->id);
      for (int t = 1; t <= T; ++t) {
        int op = tr.operating(t);
        fam.report(tr.power(t) - u.p_max * op, sid + " hour " + std::to_string(t) + " above p_max");
        fam.report(u.p_min * op - tr.power(t), sid + " hour " + std::to_string(t) + " below p_min");
      }
    }
    out.families.push_back(fam.take());
  }

  // --- ramping ---------------------------------------------------------------
  {
    detail::FamilyCollector fam("ramping");
    auto check_ramp = [&](const UnitParams& u, const std::string& who, auto power_at) {
      for (int t = 1; t <= T; ++t) {
        double prev = power_at(t - 1);
        double cur = power_at(t);
        fam.report(cur - prev - u.ramp_up, who + " hour " + std::to_string(t) + " ramp-up");
        fam.report(prev - cur - u.ramp_down, who + " hour " + std::to_string(t) + " ramp-down");
      }
    };
    for (std::size_t g = 0; g < inst.generators.size(); ++g) {
      const Generator& gen = inst.generators[g];
      check_ramp(gen.unit, "generator " + std::to_string(gen.id), [&](int t) {
        if (t == 0) return gen.unit.initial_on ? gen.unit.initial_output : 0.0;
        return rep.units[g][t - 1].power;
      });
    }
    for (const auto& tr : tracks) {
      check_ramp(tr.ship->unit, "ship " + std::to_string(tr.ship->id),
                 [&](int t) { return tr.power(t); });
    }
    out.families.push_back(fam.take());
  }

  // --- start-up / shutdown logic ---------------------------------------------
  {
    detail::FamilyCollector fam("startup-shutdown");
    for (std::size_t g = 0; g < inst.generators.size(); ++g) {
      const Generator& gen = inst.generators[g];
      const std::string gid = "generator " + std::to_string(gen.id);
      for (int t = 1; t <= T; ++t) {
        const UnitHour& h = rep.units[g][t - 1];
        int prev_on = t == 1 ? (gen.unit.initial_on ? 1 : 0) : rep.units[g][t - 2].on;
        fam.report(std::abs(h.startup - h.shutdown - (h.on - prev_on)),
                   gid + " hour " + std::to_string(t) + " start/stop logic");
        fam.report(static_cast<double>(h.startup + h.shutdown - 1),
                   gid + " hour " + std::to_string(t) + " starts and stops at once");
      }
    }
    out.families.push_back(fam.take());
  }

  // --- minimum up / down times ------------------------------------------------
  {
    detail::FamilyCollector fam("min-up-down");
    for (std::size_t g = 0; g < inst.generators.size(); ++g) {
      std::vector<int> on(T);
      for (int t = 1; t <= T; ++t) on[t - 1] = rep.units[g][t - 1].on;
      detail::check_min_times(fam, "generator " + std::to_string(inst.generators[g].id),
                              inst.generators[g].unit, on, T);
    }
    for (const auto& tr : tracks) {
      std::vector<int> on(T);
      for (int t = 1; t <= T; ++t) on[t - 1] = tr.operating(t);
      detail::check_min_times(fam, "ship " + std::to_string(tr.ship->id), tr.ship->unit, on, T);
    }
    out.families.push_back(fam.take());
  }

  // --- DC flow definition ------------------------------------------------------
  {
    detail::FamilyCollector fam("dc-flow");
    for (std::size_t l = 0; l < inst.lines.size(); ++l) {
      const Line& line = inst.lines[l];
      int from = inst.bus_index(line.from_bus);
      int to = inst.bus_index(line.to_bus);
      for (int t = 1; t <= T; ++t) {
        double expect = inst.base_mva * (rep.angles[from][t - 1] - rep.angles[to][t - 1]) /
                        line.reactance;
        fam.report(std::abs(rep.flows[l][t - 1] - expect),
                   "line " + std::to_string(line.id) + " hour " + std::to_string(t));
      }
    }
    out.families.push_back(fam.take());
  }

  // --- nodal balance -------------------------------------------------------------
  {
    detail::FamilyCollector fam("balance");
    for (std::size_t m = 0; m < inst.buses.size(); ++m) {
      const Bus& bus = inst.buses[m];
      for (int t = 1; t <= T; ++t) {
        double net = rep.shed[m][t - 1] - inst.demand_at(static_cast<int>(m), t);
        for (std::size_t l = 0; l < inst.lines.size(); ++l) {
          if (inst.bus_index(inst.lines[l].to_bus) == static_cast<int>(m)) {
            net += rep.flows[l][t - 1];
          }
          if (inst.bus_index(inst.lines[l].from_bus) == static_cast<int>(m)) {
            net -= rep.flows[l][t - 1];
          }
        }
        for (std::size_t g = 0; g < inst.generators.size(); ++g) {
          if (inst.bus_index(inst.generators[g].bus) == static_cast<int>(m)) {
            net += rep.units[g][t - 1].power;
          }
        }
        for (const auto& tr : tracks) {
          int port = tr.port_at(t);
          if (port >= 0 && inst.ports[inst.port_index(port)].bus == bus.id) {
            net += tr.power(t);
          }
        }
        fam.report(std::abs(net), "bus " + std::to_string(bus.id) + " hour " + std::to_string(t));
      }
    }
    out.families.push_back(fam.take());
  }

  // --- shedding bounds --------------------------------------------------------------
  {
    detail::FamilyCollector fam("shedding");
    for (std::size_t m = 0; m < inst.buses.size(); ++m) {
      for (int t = 1; t <= T; ++t) {
        double shed = rep.shed[m][t - 1];
        double cap = inst.shed_factor_at(static_cast<int>(m), t) *
                     inst.demand_at(static_cast<int>(m), t);
        fam.report(-shed, "bus " + std::to_string(inst.buses[m].id) + " hour " +
                              std::to_string(t) + " negative shed");
        fam.report(shed - cap, "bus " + std::to_string(inst.buses[m].id) + " hour " +
                                   std::to_string(t) + " shed above limit");
      }
    }
    out.families.push_back(fam.take());
  }

  // --- flow/angle limits and the reference angle --------------------------------------
  {
    detail::FamilyCollector fam("limits");
    for (std::size_t l = 0; l < inst.lines.size(); ++l) {
      for (int t = 1; t <= T; ++t) {
        fam.report(std::abs(rep.flows[l][t - 1]) - inst.lines[l].flow_max,
                   "line " + std::to_string(inst.lines[l].id) + " hour " + std::to_string(t));
      }
    }
    int ref = inst.reference_bus_index();
    for (std::size_t m = 0; m < inst.buses.size(); ++m) {
      for (int t = 1; t <= T; ++t) {
        fam.report(std::abs(rep.angles[m][t - 1]) - inst.buses[m].angle_max,
                   "bus " + std::to_string(inst.buses[m].id) + " hour " + std::to_string(t));
        if (static_cast<int>(m) == ref) {
          fam.report(std::abs(rep.angles[m][t - 1]),
                     "reference angle hour " + std::to_string(t));
        }
      }
    }
    out.families.push_back(fam.take());
  }

  // --- end of horizon -------------------------------------------------------------------
  {
    detail::FamilyCollector fam("end-of-horizon");
    for (const auto& tr : tracks) {
      if (tr.sailing(T)) {
        fam.report(1.0, "ship " + std::to_string(tr.ship->id) + " sails at the final hour");
      }
    }
    out.families.push_back(fam.take());
  }

  // Independently recomputed cost, attached for downstream comparison.
  out.recomputed = recompute_cost(inst, rep);
  return out;
}

// Exhaustive oracle: enumerates all assignments of the model's free binaries
// in lexicographic order (0 before 1), pruning any branch that already
// violates a fully-decided all-binary constraint, and solves the residual LP
// at each leaf. Deterministic: the first lexicographic minimizer wins ties.
struct BruteForceResult {
  bool feasible = false;
  double objective = milp::kInfinity;
  std::vector<double> values;
  long leaves_evaluated = 0;
};

inline BruteForceResult brute_force_solve(const milp::MilpModel& model, int limit) {
  using namespace milp;
  std::vector<VarId> free_bins;
  for (VarId j : model.binary_variables()) {
    const Variable& v = model.variable(j);
    if (v.lower < v.upper) free_bins.push_back(j);
  }
  if (static_cast<int>(free_bins.size()) > limit) {
    throw SizeError("brute_force_solve: " + std::to_string(free_bins.size()) +
                    " free binaries exceed the limit of " + std::to_string(limit));
  }

  const int n = static_cast<int>(free_bins.size());
  std::vector<int> order_of(model.num_variables(), -1);
  for (int k = 0; k < n; ++k) order_of[free_bins[k]] = k;

  // All-binary constraints become logic filters; they are evaluated as soon
  // as their last free binary is assigned.
  struct Filter {
    const LinearConstraint* con;
    double base;      // contribution of fixed variables
    int last_depth;   // highest enumeration position among free terms
  };
  std::vector<std::vector<Filter>> by_depth(std::max(n, 1));
  std::vector<const LinearConstraint*> constant_rows;
  for (const auto& con : model.constraints()) {
    bool all_binary = true;
    double base = 0.0;
    int last = -1;
    for (const auto& [id, coef] : con.terms) {
      const Variable& v = model.variable(id);
      if (v.kind != VarKind::Binary) {
        all_binary = false;
        break;
      }
      if (order_of[id] < 0) {
        base += coef * v.lower;  // fixed binary
      } else {
        last = std::max(last, order_of[id]);
      }
    }
    if (!all_binary) continue;
    if (last < 0) {
      constant_rows.push_back(&con);
    } else {
      by_depth[last].push_back(Filter{&con, base, last});
    }
  }

  auto satisfied = [](double lhs, Sense sense, double rhs) {
    switch (sense) {
      case Sense::LessEqual: return lhs <= rhs + 1e-9;
      case Sense::GreaterEqual: return lhs >= rhs - 1e-9;
      case Sense::Equal: return std::abs(lhs - rhs) <= 1e-9;
    }
    return false;
  };
  for (const auto* con : constant_rows) {
    double lhs = 0.0;
    for (const auto& [id, coef] : con->terms) lhs += coef * model.variable(id).lower;
    if (!satisfied(lhs, con->sense, con->rhs)) return BruteForceResult{};  // infeasible outright
  }

  SimplexSolver solver(model);
  BruteForceResult best;
  std::vector<int> assignment(n, 0);

  auto leaf = [&]() {
    for (int k = 0; k < n; ++k) {
      solver.set_variable_bounds(free_bins[k], assignment[k], assignment[k]);
    }
    LpSolution lp = solver.solve();
    ++best.leaves_evaluated;
    if (lp.status != LpStatus::Optimal) return;
    if (lp.objective < best.objective - 1e-12) {
      best.feasible = true;
      best.objective = lp.objective;
      best.values = lp.values;
    }
  };

  std::function<bool(int, const Filter&)> filter_ok = [&](int, const Filter& f) {
    double lhs = f.base;
    for (const auto& [id, coef] : f.con->terms) {
      int k = order_of[id];
      if (k >= 0) lhs += coef * assignment[k];
    }
    return satisfied(lhs, f.con->sense, f.con->rhs);
  };

  std::function<void(int)> dfs = [&](int depth) {
    if (depth == n) {
      leaf();
      return;
    }
    for (int v = 0; v <= 1; ++v) {
      assignment[depth] = v;
      bool ok = true;
      for (const Filter& f : by_depth[depth]) {
        if (!filter_ok(depth, f)) {
          ok = false;
          break;
        }
      }
      if (ok) dfs(depth + 1);
    }
    assignment[depth] = 0;
  };

  if (n == 0) {
    leaf();
  } else {
    dfs(0);
  }
  return best;
}

}  // namespace mesc::validator
