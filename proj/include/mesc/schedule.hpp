#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mesc/errors.hpp"
#include "mesc/milp/model.hpp"

namespace mesc {

enum class Approach { Gcuc, MescIntegrated, MescSequential, MescStationary };

inline const char* to_string(Approach a) {
  switch (a) {
    case Approach::Gcuc: return "gcuc";
    case Approach::MescIntegrated: return "mesc-i";
    case Approach::MescSequential: return "mesc-sq";
    case Approach::MescStationary: return "mesc-is";
  }
  return "unknown";
}

inline Approach approach_from_string(const std::string& s) {
  if (s == "gcuc") return Approach::Gcuc;
  if (s == "mesc-i") return Approach::MescIntegrated;
  if (s == "mesc-sq") return Approach::MescSequential;
  if (s == "mesc-is") return Approach::MescStationary;
  throw ParseError("unknown approach '" + s + "' (expected gcuc|mesc-i|mesc-sq|mesc-is)");
}

struct UnitHour {
  int on = 0;
  int startup = 0;
  int shutdown = 0;
  double power = 0.0;
};

struct ShipHour {
  bool sailing = false;
  int port_id = -1;   // valid when not sailing
  int arc_from = -1;  // valid when sailing
  int arc_to = -1;
  int operating = 0;
  int waiting = 0;
  int entered = 0;
  int departed = 0;
  double power = 0.0;
};

struct CostBreakdown {
  double grid_energy = 0.0;  // commitment + energy cost of inland units
  double grid_startup = 0.0;
  double grid_shutdown = 0.0;
  double shed_penalty = 0.0;
  double ship_energy = 0.0;
  double ship_startup = 0.0;
  double ship_shutdown = 0.0;
  double ship_sailing = 0.0;
  double ship_entering = 0.0;
  double ship_departure = 0.0;
  double ship_waiting = 0.0;

  double ship_total() const {
    return ship_energy + ship_startup + ship_shutdown + ship_sailing + ship_entering +
           ship_departure + ship_waiting;
  }
  double total() const {
    return grid_energy + grid_startup + grid_shutdown + shed_penalty + ship_total();
  }
};

struct SolverStats {
  milp::SolveStatus status = milp::SolveStatus::Infeasible;
  double objective = 0.0;
  double best_bound = 0.0;
  double relative_gap = 0.0;
  long nodes = 0;
  long simplex_iterations = 0;
  double wall_seconds = 0.0;
};

// Decoded solution: per-hour unit commitment and dispatch, ship timelines,
// network state, shedding and the itemized cost breakdown.
struct ScheduleReport {
  Approach approach = Approach::Gcuc;
  int horizon = 0;
  std::string cost_mode = "linear";  // "linear" or "piecewise-<k>"
  bool approach_failed = false;      // stage-2 failure with stage-1 preserved

  std::vector<int> generator_ids;
  std::vector<std::string> generator_names;
  std::vector<std::vector<UnitHour>> units;  // [g][t-1]

  std::vector<int> ship_ids;
  std::vector<std::string> ship_names;
  std::vector<std::vector<ShipHour>> ships;  // [s][t-1]

  std::vector<int> line_ids;
  std::vector<std::vector<double>> flows;  // [l][t-1], MW

  std::vector<int> bus_ids;
  std::vector<std::vector<double>> angles;  // [m][t-1], radians
  std::vector<std::vector<double>> shed;    // [m][t-1], MW

  CostBreakdown costs;
  double objective = 0.0;
  SolverStats stats;

  bool has_stage1 = false;  // sequential approach carries both stages
  double stage1_objective = 0.0;
  SolverStats stage1_stats;

  double total_shed_mwh() const {
    double total = 0.0;
    for (const auto& row : shed)
      for (double v : row) total += v;
    return total;
  }
  double total_ship_mwh() const {
    double total = 0.0;
    for (const auto& row : ships)
      for (const ShipHour& h : row) total += h.power;
    return total;
  }
};

// --- JSON serialization -----------------------------------------------------

inline nlohmann::json to_json(const SolverStats& s) {
  return {{"status", milp::to_string(s.status)}, {"objective", s.objective},
          {"best_bound", s.best_bound},          {"relative_gap", s.relative_gap},
          {"nodes", s.nodes},                    {"simplex_iterations", s.simplex_iterations},
          {"wall_seconds", s.wall_seconds}};
}

inline SolverStats solver_stats_from_json(const nlohmann::json& j) {
  SolverStats s;
  std::string st = j.value("status", "infeasible");
  if (st == "optimal") s.status = milp::SolveStatus::Optimal;
  else if (st == "feasible-gap") s.status = milp::SolveStatus::FeasibleGap;
  else if (st == "time-limit") s.status = milp::SolveStatus::TimeLimit;
  else s.status = milp::SolveStatus::Infeasible;
  s.objective = j.value("objective", 0.0);
  s.best_bound = j.value("best_bound", 0.0);
  s.relative_gap = j.value("relative_gap", 0.0);
  s.nodes = j.value("nodes", 0L);
  s.simplex_iterations = j.value("simplex_iterations", 0L);
  s.wall_seconds = j.value("wall_seconds", 0.0);
  return s;
}

inline nlohmann::json to_json(const ScheduleReport& r) {
  nlohmann::json j;
  j["approach"] = to_string(r.approach);
  j["horizon"] = r.horizon;
  j["cost_mode"] = r.cost_mode;
  j["approach_failed"] = r.approach_failed;
  j["objective"] = r.objective;
  j["stats"] = to_json(r.stats);
  if (r.has_stage1) {
    j["stage1"] = {{"objective", r.stage1_objective}, {"stats", to_json(r.stage1_stats)}};
  }

  j["units"] = nlohmann::json::array();
  for (std::size_t g = 0; g < r.units.size(); ++g) {
    nlohmann::json rows = nlohmann::json::array();
    for (const UnitHour& h : r.units[g]) {
      rows.push_back({{"on", h.on}, {"su", h.startup}, {"sd", h.shutdown}, {"p", h.power}});
    }
    j["units"].push_back({{"id", r.generator_ids[g]}, {"name", r.generator_names[g]},
                          {"hours", std::move(rows)}});
  }

  j["ships"] = nlohmann::json::array();
  for (std::size_t s = 0; s < r.ships.size(); ++s) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ShipHour& h : r.ships[s]) {
      rows.push_back({{"sailing", h.sailing}, {"port", h.port_id},
                      {"from", h.arc_from},   {"to", h.arc_to},
                      {"o", h.operating},     {"w", h.waiting},
                      {"ve", h.entered},      {"vd", h.departed},
                      {"p", h.power}});
    }
    j["ships"].push_back(
        {{"id", r.ship_ids[s]}, {"name", r.ship_names[s]}, {"hours", std::move(rows)}});
  }

  j["line_ids"] = r.line_ids;
  j["flows"] = r.flows;
  j["bus_ids"] = r.bus_ids;
  j["angles"] = r.angles;
  j["shed"] = r.shed;

  j["costs"] = {{"grid_energy", r.costs.grid_energy},
                {"grid_startup", r.costs.grid_startup},
                {"grid_shutdown", r.costs.grid_shutdown},
                {"shed_penalty", r.costs.shed_penalty},
                {"ship_energy", r.costs.ship_energy},
                {"ship_startup", r.costs.ship_startup},
                {"ship_shutdown", r.costs.ship_shutdown},
                {"ship_sailing", r.costs.ship_sailing},
                {"ship_entering", r.costs.ship_entering},
                {"ship_departure", r.costs.ship_departure},
                {"ship_waiting", r.costs.ship_waiting},
                {"ship_total", r.costs.ship_total()},
                {"total", r.costs.total()}};
  return j;
}

inline ScheduleReport schedule_report_from_json(const nlohmann::json& j) {
  ScheduleReport r;
  r.approach = approach_from_string(j.value("approach", "gcuc"));
  r.horizon = j.value("horizon", 0);
  r.cost_mode = j.value("cost_mode", "linear");
  r.approach_failed = j.value("approach_failed", false);
  r.objective = j.value("objective", 0.0);
  if (j.contains("stats")) r.stats = solver_stats_from_json(j["stats"]);
  if (j.contains("stage1")) {
    r.has_stage1 = true;
    r.stage1_objective = j["stage1"].value("objective", 0.0);
    if (j["stage1"].contains("stats")) r.stage1_stats = solver_stats_from_json(j["stage1"]["stats"]);
  }
  for (const auto& uj : j.value("units", nlohmann::json::array())) {
    r.generator_ids.push_back(uj.at("id").get<int>());
    r.generator_names.push_back(uj.value("name", ""));
    std::vector<UnitHour> rows;
    for (const auto& hj : uj.at("hours")) {
      UnitHour h;
      h.on = hj.value("on", 0);
      h.startup = hj.value("su", 0);
      h.shutdown = hj.value("sd", 0);
      h.power = hj.value("p", 0.0);
      rows.push_back(h);
    }
    r.units.push_back(std::move(rows));
  }
  for (const auto& sj : j.value("ships", nlohmann::json::array())) {
    r.ship_ids.push_back(sj.at("id").get<int>());
    r.ship_names.push_back(sj.value("name", ""));
    std::vector<ShipHour> rows;
    for (const auto& hj : sj.at("hours")) {
      ShipHour h;
      h.sailing = hj.value("sailing", false);
      h.port_id = hj.value("port", -1);
      h.arc_from = hj.value("from", -1);
      h.arc_to = hj.value("to", -1);
      h.operating = hj.value("o", 0);
      h.waiting = hj.value("w", 0);
      h.entered = hj.value("ve", 0);
      h.departed = hj.value("vd", 0);
      h.power = hj.value("p", 0.0);
      rows.push_back(h);
    }
    r.ships.push_back(std::move(rows));
  }
  r.line_ids = j.value("line_ids", std::vector<int>{});
  r.flows = j.value("flows", std::vector<std::vector<double>>{});
  r.bus_ids = j.value("bus_ids", std::vector<int>{});
  r.angles = j.value("angles", std::vector<std::vector<double>>{});
  r.shed = j.value("shed", std::vector<std::vector<double>>{});
  if (j.contains("costs")) {
    const auto& c = j["costs"];
    r.costs.grid_energy = c.value("grid_energy", 0.0);
    r.costs.grid_startup = c.value("grid_startup", 0.0);
    r.costs.grid_shutdown = c.value("grid_shutdown", 0.0);
    r.costs.shed_penalty = c.value("shed_penalty", 0.0);
    r.costs.ship_energy = c.value("ship_energy", 0.0);
    r.costs.ship_startup = c.value("ship_startup", 0.0);
    r.costs.ship_shutdown = c.value("ship_shutdown", 0.0);
    r.costs.ship_sailing = c.value("ship_sailing", 0.0);
    r.costs.ship_entering = c.value("ship_entering", 0.0);
    r.costs.ship_departure = c.value("ship_departure", 0.0);
    r.costs.ship_waiting = c.value("ship_waiting", 0.0);
  }
  return r;
}

inline void save_report(const ScheduleReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("report: cannot open '" + path + "' for writing");
  out << to_json(r).dump(2) << "\n";
  if (!out.good()) throw IoError("report: write to '" + path + "' failed");
}

inline ScheduleReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("report: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report: invalid JSON in '" + path + "': " + e.what());
  }
  return schedule_report_from_json(j);
}

}  // namespace mesc
