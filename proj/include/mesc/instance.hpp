#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mesc/errors.hpp"

namespace mesc {

struct Bus {
  int id = 0;
  bool reference = false;
  double angle_max = 1.5707963267948966;  // radians; the lower limit is -angle_max

  bool operator==(const Bus&) const = default;
};

struct Line {
  int id = 0;
  int from_bus = 0;
  int to_bus = 0;
  double reactance = 0.0;  // per-unit on the instance MVA base
  double flow_max = 0.0;   // MW; the lower limit is -flow_max

  bool operator==(const Line&) const = default;
};

// Thermal-unit parameter block, shared by inland generators and ship units.
struct UnitParams {
  double cost_a = 0.0;  // $ per committed hour
  double cost_b = 0.0;  // $/MWh
  double cost_c = 0.0;  // $/MWh^2 (used only in piecewise cost mode)
  double p_min = 0.0;
  double p_max = 0.0;
  double ramp_up = 0.0;
  double ramp_down = 0.0;
  double startup_cost = 0.0;
  double shutdown_cost = 0.0;
  int min_on = 1;
  int min_off = 1;
  bool initial_on = false;
  int initial_hours = 1;  // time already spent in the initial state
  double initial_output = 0.0;

  bool operator==(const UnitParams&) const = default;
};

struct Generator {
  int id = 0;
  std::string name;
  int bus = 0;
  UnitParams unit;

  bool operator==(const Generator&) const = default;
};

struct Port {
  int id = 0;
  int bus = 0;
  int operating_capacity = 2;  // POC: ships operating at once
  int berth_capacity = 4;      // PDC: departure/berth capacity

  bool operator==(const Port&) const = default;
};

struct Ship {
  int id = 0;
  std::string name;
  int initial_port = 0;
  UnitParams unit;
  double entering_cost = 0.0;    // $ per entering event
  double departure_cost = 0.0;   // $ per departure/berthing event
  double waiting_cost = 0.0;     // $ per idle hour in port
  double sailing_cost = 0.0;     // $ per sailing hour
  int travel_hours_default = 0;  // 0: no uniform travel time declared
  std::map<std::pair<int, int>, int> travel_overrides;  // (port i, port j) -> hours

  int travel_hours(int from_port, int to_port) const {
    auto it = travel_overrides.find({from_port, to_port});
    if (it != travel_overrides.end()) return it->second;
    return travel_hours_default;
  }

  bool operator==(const Ship&) const = default;
};

enum class BerthRule {
  PerShipTotal,      // sum of departures over the horizon, per (port, ship)
  PerHourPresence,   // ships present per hour, per port
};

// A full MESC scenario: the single immutable source of truth the formulation,
// orchestration and validation layers all read from.
struct Instance {
  int horizon = 24;
  double base_mva = 100.0;
  double shed_cost = 1000.0;          // $/MWh of unmet demand
  double shed_factor = 1.0;           // uniform default for Psi
  std::vector<std::vector<double>> shed_factor_table;  // optional [bus][hour]
  BerthRule berth_rule = BerthRule::PerShipTotal;

  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::vector<Generator> generators;
  std::vector<Port> ports;
  std::vector<Ship> ships;
  std::vector<std::vector<double>> demand;       // [bus position][hour 0-based]
  std::vector<std::pair<int, int>> route_pairs;  // ordered port-id pairs, sorted

  int bus_index(int id) const {
    for (std::size_t k = 0; k < buses.size(); ++k) {
      if (buses[k].id == id) return static_cast<int>(k);
    }
    return -1;
  }
  int port_index(int id) const {
    for (std::size_t k = 0; k < ports.size(); ++k) {
      if (ports[k].id == id) return static_cast<int>(k);
    }
    return -1;
  }
  int ship_index(int id) const {
    for (std::size_t k = 0; k < ships.size(); ++k) {
      if (ships[k].id == id) return static_cast<int>(k);
    }
    return -1;
  }
  int reference_bus_index() const {
    for (std::size_t k = 0; k < buses.size(); ++k) {
      if (buses[k].reference) return static_cast<int>(k);
    }
    return -1;
  }

  // hour t is 1-based throughout the formulation.
  double demand_at(int bus_pos, int t) const { return demand[bus_pos][t - 1]; }

  double shed_factor_at(int bus_pos, int t) const {
    if (!shed_factor_table.empty()) return shed_factor_table[bus_pos][t - 1];
    return shed_factor;
  }

  bool operator==(const Instance&) const = default;
};

struct Finding {
  std::string code;
  std::string message;
};

// Deterministic route set P+: sorted ordered port-id pairs, never (i,i).
inline const std::vector<std::pair<int, int>>& routes(const Instance& inst) {
  return inst.route_pairs;
}

// ---------------------------------------------------------------------------
// JSON ingestion
// ---------------------------------------------------------------------------

namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                         const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError("instance: missing required field '" + std::string(key) + "' in " + where);
  }
  return *it;
}

template <typename T>
T number_field(const nlohmann::json& j, const char* key, const std::string& where) {
  const nlohmann::json& v = require_key(j, key, where);
  if (!v.is_number()) {
    throw ParseError("instance: field '" + std::string(key) + "' in " + where +
                     " must be a number");
  }
  return v.get<T>();
}

template <typename T>
T number_or(const nlohmann::json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) throw ParseError("instance: field '" + std::string(key) + "' must be a number");
  return it->get<T>();
}

inline UnitParams parse_unit(const nlohmann::json& j, const std::string& where) {
  UnitParams u;
  u.cost_a = number_field<double>(j, "cost_a", where);
  u.cost_b = number_field<double>(j, "cost_b", where);
  u.cost_c = number_or<double>(j, "cost_c", 0.0);
  u.p_min = number_field<double>(j, "p_min", where);
  u.p_max = number_field<double>(j, "p_max", where);
  u.ramp_up = number_field<double>(j, "ramp_up", where);
  u.ramp_down = number_field<double>(j, "ramp_down", where);
  u.startup_cost = number_or<double>(j, "startup_cost", 0.0);
  u.shutdown_cost = number_or<double>(j, "shutdown_cost", 0.0);
  u.min_on = number_or<int>(j, "min_on", 1);
  u.min_off = number_or<int>(j, "min_off", 1);
  u.initial_on = j.value("initial_on", false);
  u.initial_hours = number_or<int>(j, "initial_hours", 1);
  u.initial_output = number_or<double>(j, "initial_output", 0.0);
  return u;
}

inline nlohmann::json unit_to_json(const UnitParams& u) {
  return nlohmann::json{
      {"cost_a", u.cost_a},           {"cost_b", u.cost_b},
      {"cost_c", u.cost_c},           {"p_min", u.p_min},
      {"p_max", u.p_max},             {"ramp_up", u.ramp_up},
      {"ramp_down", u.ramp_down},     {"startup_cost", u.startup_cost},
      {"shutdown_cost", u.shutdown_cost}, {"min_on", u.min_on},
      {"min_off", u.min_off},         {"initial_on", u.initial_on},
      {"initial_hours", u.initial_hours}, {"initial_output", u.initial_output}};
}

}  // namespace detail

inline Instance instance_from_json(const nlohmann::json& j) {
  using detail::number_field;
  using detail::number_or;
  using detail::require_key;

  Instance inst;
  inst.horizon = number_or<int>(j, "horizon", 24);
  if (inst.horizon < 1) throw ParseError("instance: horizon must be >= 1");
  inst.base_mva = number_or<double>(j, "base_mva", 100.0);

  if (auto it = j.find("penalties"); it != j.end()) {
    inst.shed_cost = number_or<double>(*it, "shed_cost", 1000.0);
    inst.shed_factor = number_or<double>(*it, "shed_factor", 1.0);
    if (auto tbl = it->find("shed_factor_table"); tbl != it->end()) {
      inst.shed_factor_table = tbl->get<std::vector<std::vector<double>>>();
    }
  }

  if (std::string rule = j.value("berth_rule", "per-ship-total"); rule == "per-ship-total") {
    inst.berth_rule = BerthRule::PerShipTotal;
  } else if (rule == "per-hour-presence") {
    inst.berth_rule = BerthRule::PerHourPresence;
  } else {
    throw ParseError("instance: unknown berth_rule '" + rule + "'");
  }

  for (const auto& bj : require_key(j, "buses", "document")) {
    Bus b;
    b.id = number_field<int>(bj, "id", "buses");
    b.reference = bj.value("reference", false);
    b.angle_max = number_or<double>(bj, "angle_max", 1.5707963267948966);
    inst.buses.push_back(b);
  }
  if (inst.buses.empty()) throw ParseError("instance: at least one bus is required");

  auto check_bus = [&](int id, const std::string& where) {
    if (inst.bus_index(id) < 0) {
      throw ReferenceError("instance: " + where + " references unknown bus " + std::to_string(id));
    }
  };

  for (const auto& lj : require_key(j, "lines", "document")) {
    Line l;
    l.id = number_field<int>(lj, "id", "lines");
    l.from_bus = number_field<int>(lj, "from", "lines");
    l.to_bus = number_field<int>(lj, "to", "lines");
    l.reactance = number_field<double>(lj, "reactance", "lines");
    l.flow_max = number_field<double>(lj, "flow_max", "lines");
    check_bus(l.from_bus, "line " + std::to_string(l.id));
    check_bus(l.to_bus, "line " + std::to_string(l.id));
    inst.lines.push_back(l);
  }

  for (const auto& gj : require_key(j, "generators", "document")) {
    Generator g;
    g.id = number_field<int>(gj, "id", "generators");
    g.bus = number_field<int>(gj, "bus", "generators");
    g.name = gj.value("name", "G" + std::to_string(g.id));
    g.unit = detail::parse_unit(gj, "generator " + std::to_string(g.id));
    check_bus(g.bus, "generator " + std::to_string(g.id));
    inst.generators.push_back(g);
  }

  for (const auto& pj : require_key(j, "ports", "document")) {
    Port p;
    p.id = number_field<int>(pj, "id", "ports");
    p.bus = number_field<int>(pj, "bus", "ports");
    p.operating_capacity = number_or<int>(pj, "operating_capacity", 2);
    p.berth_capacity = number_or<int>(pj, "berth_capacity", 4);
    check_bus(p.bus, "port " + std::to_string(p.id));
    inst.ports.push_back(p);
  }

  for (const auto& sj : require_key(j, "ships", "document")) {
    Ship s;
    s.id = number_field<int>(sj, "id", "ships");
    s.name = sj.value("name", "PS" + std::to_string(s.id));
    s.initial_port = number_field<int>(sj, "initial_port", "ships");
    s.unit = detail::parse_unit(sj, "ship " + std::to_string(s.id));
    s.entering_cost = number_field<double>(sj, "entering_cost", "ships");
    s.departure_cost = number_field<double>(sj, "departure_cost", "ships");
    s.waiting_cost = number_field<double>(sj, "waiting_cost", "ships");
    s.sailing_cost = number_field<double>(sj, "sailing_cost", "ships");
    s.travel_hours_default = number_or<int>(sj, "travel_hours", 0);
    if (auto ov = sj.find("travel_overrides"); ov != sj.end()) {
      for (const auto& row : *ov) {
        if (!row.is_array() || row.size() != 3) {
          throw ParseError("instance: ship " + std::to_string(s.id) +
                           " travel_overrides entries must be [from, to, hours]");
        }
        s.travel_overrides[{row[0].get<int>(), row[1].get<int>()}] = row[2].get<int>();
      }
    }
    if (inst.port_index(s.initial_port) < 0) {
      throw ReferenceError("instance: ship " + std::to_string(s.id) +
                           " references unknown initial port " + std::to_string(s.initial_port));
    }
    inst.ships.push_back(s);
  }

  const auto& dj = require_key(j, "demand", "document");
  if (!dj.is_array() || dj.size() != inst.buses.size()) {
    throw ParseError("instance: demand must have one row per bus (" +
                     std::to_string(inst.buses.size()) + " expected)");
  }
  for (std::size_t b = 0; b < dj.size(); ++b) {
    auto row = dj[b].get<std::vector<double>>();
    if (static_cast<int>(row.size()) != inst.horizon) {
      throw ParseError("instance: demand row " + std::to_string(b) + " has " +
                       std::to_string(row.size()) + " entries; horizon is " +
                       std::to_string(inst.horizon));
    }
    inst.demand.push_back(std::move(row));
  }

  // Route set P+. "all" (or absence) means every ordered pair of ports.
  std::set<std::pair<int, int>> pairs;
  const auto rit = j.find("routes");
  if (rit == j.end() || (rit->is_string() && rit->get<std::string>() == "all")) {
    for (const Port& a : inst.ports) {
      for (const Port& b : inst.ports) {
        if (a.id != b.id) pairs.insert({a.id, b.id});
      }
    }
  } else {
    for (const auto& row : *rit) {
      if (!row.is_array() || row.size() != 2) {
        throw ParseError("instance: routes entries must be [from_port, to_port]");
      }
      int a = row[0].get<int>(), b = row[1].get<int>();
      if (a == b) {
        throw ParseError("instance: route (" + std::to_string(a) + "," + std::to_string(b) +
                         ") is a self-loop");
      }
      if (inst.port_index(a) < 0 || inst.port_index(b) < 0) {
        throw ReferenceError("instance: route references unknown port " +
                             std::to_string(inst.port_index(a) < 0 ? a : b));
      }
      pairs.insert({a, b});
    }
  }
  inst.route_pairs.assign(pairs.begin(), pairs.end());

  if (!inst.shed_factor_table.empty()) {
    if (inst.shed_factor_table.size() != inst.buses.size()) {
      throw ParseError("instance: shed_factor_table must have one row per bus");
    }
    for (const auto& row : inst.shed_factor_table) {
      if (static_cast<int>(row.size()) != inst.horizon) {
        throw ParseError("instance: shed_factor_table rows must span the horizon");
      }
    }
  }
  return inst;
}

inline Instance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("instance: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("instance: invalid JSON in '" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["horizon"] = inst.horizon;
  j["base_mva"] = inst.base_mva;
  j["penalties"] = {{"shed_cost", inst.shed_cost}, {"shed_factor", inst.shed_factor}};
  if (!inst.shed_factor_table.empty()) {
    j["penalties"]["shed_factor_table"] = inst.shed_factor_table;
  }
  j["berth_rule"] =
      inst.berth_rule == BerthRule::PerShipTotal ? "per-ship-total" : "per-hour-presence";
  j["buses"] = nlohmann::json::array();
  for (const Bus& b : inst.buses) {
    j["buses"].push_back({{"id", b.id}, {"reference", b.reference}, {"angle_max", b.angle_max}});
  }
  j["lines"] = nlohmann::json::array();
  for (const Line& l : inst.lines) {
    j["lines"].push_back({{"id", l.id},
                          {"from", l.from_bus},
                          {"to", l.to_bus},
                          {"reactance", l.reactance},
                          {"flow_max", l.flow_max}});
  }
  j["generators"] = nlohmann::json::array();
  for (const Generator& g : inst.generators) {
    nlohmann::json gj = detail::unit_to_json(g.unit);
    gj["id"] = g.id;
    gj["name"] = g.name;
    gj["bus"] = g.bus;
    j["generators"].push_back(std::move(gj));
  }
  j["ports"] = nlohmann::json::array();
  for (const Port& p : inst.ports) {
    j["ports"].push_back({{"id", p.id},
                          {"bus", p.bus},
                          {"operating_capacity", p.operating_capacity},
                          {"berth_capacity", p.berth_capacity}});
  }
  j["ships"] = nlohmann::json::array();
  for (const Ship& s : inst.ships) {
    nlohmann::json sj = detail::unit_to_json(s.unit);
    sj["id"] = s.id;
    sj["name"] = s.name;
    sj["initial_port"] = s.initial_port;
    sj["entering_cost"] = s.entering_cost;
    sj["departure_cost"] = s.departure_cost;
    sj["waiting_cost"] = s.waiting_cost;
    sj["sailing_cost"] = s.sailing_cost;
    sj["travel_hours"] = s.travel_hours_default;
    if (!s.travel_overrides.empty()) {
      nlohmann::json ov = nlohmann::json::array();
      for (const auto& [key, hours] : s.travel_overrides) {
        ov.push_back({key.first, key.second, hours});
      }
      sj["travel_overrides"] = std::move(ov);
    }
    j["ships"].push_back(std::move(sj));
  }
  j["demand"] = inst.demand;
  nlohmann::json rj = nlohmann::json::array();
  for (const auto& [a, b] : inst.route_pairs) rj.push_back({a, b});
  j["routes"] = std::move(rj);
  return j;
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("instance: cannot open '" + path + "' for writing");
  out << instance_to_json(inst).dump(2) << "\n";
  if (!out.good()) throw IoError("instance: write to '" + path + "' failed");
}

// Structural validation: returns one finding per violated invariant, empty
// when the instance is clean. Parsing already rejects dangling references;
// everything else is reported here rather than thrown.
inline std::vector<Finding> validate_instance(const Instance& inst) {
  std::vector<Finding> findings;
  auto add = [&](std::string code, std::string message) {
    findings.push_back(Finding{std::move(code), std::move(message)});
  };

  if (inst.horizon < 1) add("horizon", "horizon must be at least 1 hour");

  int refs = 0;
  for (const Bus& b : inst.buses) {
    refs += b.reference ? 1 : 0;
    if (!(b.angle_max > 0)) {
      add("bus-angle", "bus " + std::to_string(b.id) + ": angle_max must be positive");
    }
  }
  if (refs != 1) {
    add("reference-bus", "exactly one reference bus required, found " + std::to_string(refs));
  }

  for (const Line& l : inst.lines) {
    if (l.from_bus == l.to_bus) {
      add("line-endpoints", "line " + std::to_string(l.id) + ": from and to bus coincide");
    }
    if (!(l.reactance > 0)) {
      add("line-reactance", "line " + std::to_string(l.id) + ": reactance must be positive");
    }
    if (!(l.flow_max > 0)) {
      add("line-limit", "line " + std::to_string(l.id) + ": flow limit must be positive");
    }
  }

  auto check_unit = [&](const UnitParams& u, const std::string& who) {
    if (!(0 <= u.p_min && u.p_min <= u.p_max)) {
      add("unit-capacity", who + ": requires 0 <= p_min <= p_max");
    }
    if (u.ramp_up < 0 || u.ramp_down < 0) add("unit-ramp", who + ": ramp rates must be >= 0");
    if (u.startup_cost < 0 || u.shutdown_cost < 0) {
      add("unit-cost", who + ": start-up/shutdown costs must be >= 0");
    }
    if (u.min_on < 1 || u.min_off < 1) {
      add("unit-min-time", who + ": minimum up/down times must be >= 1 hour");
    }
    if (u.initial_hours < 0) add("unit-initial", who + ": initial_hours must be >= 0");
  };
  for (const Generator& g : inst.generators) check_unit(g.unit, "generator " + std::to_string(g.id));

  std::set<int> port_buses;
  for (const Port& p : inst.ports) {
    if (p.operating_capacity < 1) {
      add("port-operating-capacity",
          "port " + std::to_string(p.id) + ": operating capacity must be >= 1");
    }
    if (p.berth_capacity < 0) {
      add("port-berth-capacity", "port " + std::to_string(p.id) + ": berth capacity must be >= 0");
    }
    if (!port_buses.insert(p.bus).second) {
      add("port-bus-injective",
          "port-bus mapping not injective: bus " + std::to_string(p.bus) + " hosts several ports");
    }
  }

  for (const Ship& s : inst.ships) {
    check_unit(s.unit, "ship " + std::to_string(s.id));
    if (s.entering_cost < 0 || s.departure_cost < 0 || s.waiting_cost < 0 || s.sailing_cost < 0) {
      add("ship-cost", "ship " + std::to_string(s.id) + ": movement costs must be >= 0");
    }
    if (inst.port_index(s.initial_port) < 0) {
      add("ship-initial-port",
          "ship " + std::to_string(s.id) + ": initial port does not exist");
    }
    for (const auto& [pair, hours] : s.travel_overrides) {
      if (hours < 1) {
        add("ship-travel-time", "ship " + std::to_string(s.id) + ": travel time for route (" +
                                    std::to_string(pair.first) + "," + std::to_string(pair.second) +
                                    ") must be >= 1");
      }
    }
    for (const auto& [a, b] : inst.route_pairs) {
      if (s.travel_hours(a, b) < 1) {
        add("ship-travel-time", "ship " + std::to_string(s.id) + ": no travel time for route (" +
                                    std::to_string(a) + "," + std::to_string(b) + ")");
        break;
      }
    }
  }

  if (inst.demand.size() != inst.buses.size()) {
    add("demand-shape", "demand must have one row per bus");
  } else {
    for (std::size_t b = 0; b < inst.demand.size(); ++b) {
      if (static_cast<int>(inst.demand[b].size()) != inst.horizon) {
        add("demand-shape", "demand row for bus " + std::to_string(inst.buses[b].id) +
                                " does not span the horizon");
        continue;
      }
      for (int t = 1; t <= inst.horizon; ++t) {
        if (inst.demand[b][t - 1] < 0) {
          add("demand-negative", "bus " + std::to_string(inst.buses[b].id) + " hour " +
                                     std::to_string(t) + ": negative demand");
          break;
        }
      }
    }
  }

  for (std::size_t b = 0; b < inst.buses.size(); ++b) {
    for (int t = 1; t <= inst.horizon; ++t) {
      double psi = inst.shed_factor_table.empty()
                       ? inst.shed_factor
                       : (inst.shed_factor_table.size() > b &&
                                  static_cast<int>(inst.shed_factor_table[b].size()) >= t
                              ? inst.shed_factor_table[b][t - 1]
                              : inst.shed_factor);
      if (psi < 0.0 || psi > 1.0) {
        add("shed-factor", "bus " + std::to_string(inst.buses[b].id) + " hour " +
                               std::to_string(t) + ": shed factor out of [0,1]");
        t = inst.horizon;  // one finding per bus is enough
      }
    }
  }

  for (const auto& [a, b] : inst.route_pairs) {
    if (a == b) add("route-self-loop", "route (" + std::to_string(a) + "," + std::to_string(a) + ")");
  }
  if (inst.shed_cost < 0) add("shed-cost", "shed penalty must be >= 0");
  return findings;
}

}  // namespace mesc
