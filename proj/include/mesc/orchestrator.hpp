#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "mesc/gcuc.hpp"
#include "mesc/instance.hpp"
#include "mesc/maritime.hpp"
#include "mesc/milp/branch_and_bound.hpp"
#include "mesc/milp/model.hpp"
#include "mesc/schedule.hpp"

namespace mesc {

// A formulated scenario: the model plus the handle maps needed to decode a
// solution back into a schedule.
struct AssembledModel {
  milp::MilpModel model;
  gcuc::GcucVars grid;
  maritime::MaritimeVars ships;
  bool with_ships = false;
  gcuc::CostModel cost_model;
};

// Builds the full MILP: thermal commitment, the maritime block when ships are
// included, the DC network fed by all generation handles, and both objective
// parts. Plain GCUC excludes ships entirely, costs included.
inline AssembledModel assemble_model(const Instance& inst, bool include_ships,
                                     const gcuc::CostModel& cost_model = {}) {
  AssembledModel out;
  out.cost_model = cost_model;
  out.grid = gcuc::build_uc_constraints(inst, out.model);
  out.with_ships = include_ships && !inst.ships.empty();
  if (out.with_ships) {
    out.ships = maritime::build_maritime(inst, out.model,
                                         maritime::BigM::for_horizon(inst.horizon), cost_model);
  }

  gcuc::InjectionTable injections(static_cast<int>(inst.buses.size()), inst.horizon);
  for (std::size_t g = 0; g < inst.generators.size(); ++g) {
    int bus = inst.bus_index(inst.generators[g].bus);
    for (int t = 1; t <= inst.horizon; ++t) {
      injections.add(bus, t, out.grid.power(static_cast<int>(g), t));
    }
  }
  if (out.with_ships) {
    for (int s = 0; s < out.ships.num_ships; ++s) {
      for (int i = 0; i < out.ships.num_ports; ++i) {
        int bus = inst.bus_index(inst.ports[i].bus);
        for (int t = 1; t <= inst.horizon; ++t) {
          injections.add(bus, t, out.ships.ps(s, i, t));
        }
      }
    }
  }
  gcuc::build_network_constraints(inst, out.model, injections, out.grid);
  gcuc::build_gcuc_objective(inst, out.model, out.grid, cost_model);
  return out;
}

namespace detail {

inline int round_bin(double v) { return v >= 0.5 ? 1 : 0; }

inline double piecewise_energy(const UnitParams& u, const gcuc::CostModel& cm, double p) {
  if (cm.mode != gcuc::CostModel::Mode::Piecewise || u.cost_c == 0.0 || p <= 0.0) return 0.0;
  return gcuc::piecewise_quadratic_value(u.cost_c, u.p_min, u.p_max, cm.segments, p);
}

}  // namespace detail

// Decodes solver variable values into the per-hour schedule, recomputing the
// itemized cost breakdown from the decoded timeline.
inline ScheduleReport decode_solution(const Instance& inst, const AssembledModel& am,
                                      const std::vector<double>& values, Approach approach) {
  const int T = inst.horizon;
  ScheduleReport r;
  r.approach = approach;
  r.horizon = T;
  r.cost_mode = am.cost_model.mode == gcuc::CostModel::Mode::Piecewise
                    ? "piecewise-" + std::to_string(am.cost_model.segments)
                    : "linear";

  for (std::size_t g = 0; g < inst.generators.size(); ++g) {
    const Generator& gen = inst.generators[g];
    r.generator_ids.push_back(gen.id);
    r.generator_names.push_back(gen.name);
    std::vector<UnitHour> rows(T);
    for (int t = 1; t <= T; ++t) {
      UnitHour& h = rows[t - 1];
      h.on = detail::round_bin(values[am.grid.on(static_cast<int>(g), t)]);
      h.startup = detail::round_bin(values[am.grid.startup(static_cast<int>(g), t)]);
      h.shutdown = detail::round_bin(values[am.grid.shutdown(static_cast<int>(g), t)]);
      h.power = values[am.grid.power(static_cast<int>(g), t)];
      r.costs.grid_energy += gen.unit.cost_a * h.on + gen.unit.cost_b * h.power +
                             detail::piecewise_energy(gen.unit, am.cost_model, h.power) * h.on;
      r.costs.grid_startup += gen.unit.startup_cost * h.startup;
      r.costs.grid_shutdown += gen.unit.shutdown_cost * h.shutdown;
    }
    r.units.push_back(std::move(rows));
  }

  if (am.with_ships) {
    const auto& mv = am.ships;
    for (int s = 0; s < mv.num_ships; ++s) {
      const Ship& ship = inst.ships[s];
      r.ship_ids.push_back(ship.id);
      r.ship_names.push_back(ship.name);
      std::vector<ShipHour> rows(T);
      for (int t = 1; t <= T; ++t) {
        ShipHour& h = rows[t - 1];
        int locations = 0;
        for (int i = 0; i < mv.num_ports; ++i) {
          if (detail::round_bin(values[mv.v(s, i, t)])) {
            h.port_id = inst.ports[i].id;
            ++locations;
          }
        }
        for (int a = 0; a < mv.num_arcs; ++a) {
          if (detail::round_bin(values[mv.vsail(s, a, t)])) {
            h.sailing = true;
            h.arc_from = inst.route_pairs[a].first;
            h.arc_to = inst.route_pairs[a].second;
            ++locations;
          }
        }
        if (locations != 1) {
          throw SolveError("decode: ship " + std::to_string(ship.id) + " has " +
                           std::to_string(locations) + " locations at hour " + std::to_string(t));
        }
        for (int i = 0; i < mv.num_ports; ++i) {
          h.operating += detail::round_bin(values[mv.o(s, i, t)]);
          h.waiting += detail::round_bin(values[mv.w(s, i, t)]);
          h.entered += detail::round_bin(values[mv.ve(s, i, t)]);
          h.departed += detail::round_bin(values[mv.vd(s, i, t)]);
          h.power += values[mv.ps(s, i, t)];
        }
        r.costs.ship_energy += ship.unit.cost_a * detail::round_bin(values[mv.on(s, t)]) +
                               ship.unit.cost_b * h.power +
                               detail::piecewise_energy(ship.unit, am.cost_model, h.power) *
                                   detail::round_bin(values[mv.on(s, t)]);
        r.costs.ship_startup +=
            ship.unit.startup_cost * detail::round_bin(values[mv.startup(s, t)]);
        r.costs.ship_shutdown +=
            ship.unit.shutdown_cost * detail::round_bin(values[mv.shutdown(s, t)]);
        r.costs.ship_entering += ship.entering_cost * h.entered;
        r.costs.ship_departure += ship.departure_cost * h.departed;
        r.costs.ship_waiting += ship.waiting_cost * h.waiting;
        if (h.sailing) r.costs.ship_sailing += ship.sailing_cost;
      }
      r.ships.push_back(std::move(rows));
    }
  }

  for (std::size_t l = 0; l < inst.lines.size(); ++l) {
    r.line_ids.push_back(inst.lines[l].id);
    std::vector<double> row(T);
    for (int t = 1; t <= T; ++t) row[t - 1] = values[am.grid.flow(static_cast<int>(l), t)];
    r.flows.push_back(std::move(row));
  }
  for (std::size_t m = 0; m < inst.buses.size(); ++m) {
    r.bus_ids.push_back(inst.buses[m].id);
    std::vector<double> arow(T), srow(T);
    for (int t = 1; t <= T; ++t) {
      arow[t - 1] = values[am.grid.angle(static_cast<int>(m), t)];
      srow[t - 1] = values[am.grid.shed(static_cast<int>(m), t)];
      r.costs.shed_penalty += inst.shed_cost * srow[t - 1];
    }
    r.angles.push_back(std::move(arow));
    r.shed.push_back(std::move(srow));
  }
  return r;
}

namespace detail {

inline SolverStats stats_from(const milp::MipSolution& sol) {
  SolverStats s;
  s.status = sol.status;
  s.objective = sol.objective;
  s.best_bound = sol.best_bound;
  s.relative_gap = sol.relative_gap;
  s.nodes = sol.nodes;
  s.simplex_iterations = sol.simplex_iterations;
  s.wall_seconds = sol.wall_seconds;
  return s;
}

inline ScheduleReport report_from_solution(const Instance& inst, const AssembledModel& am,
                                           const milp::MipSolution& sol, Approach approach) {
  if (!sol.has_solution()) {
    ScheduleReport r;
    r.approach = approach;
    r.horizon = inst.horizon;
    r.approach_failed = true;
    r.stats = stats_from(sol);
    return r;
  }
  ScheduleReport r = decode_solution(inst, am, sol.values, approach);
  r.objective = sol.objective;
  r.stats = stats_from(sol);
  return r;
}

}  // namespace detail

// Plain grid-constrained unit commitment: ships excluded entirely.
inline ScheduleReport solve_gcuc(const Instance& inst, const milp::SolverConfig& config = {},
                                 const gcuc::CostModel& cost_model = {}) {
  AssembledModel am = assemble_model(inst, /*include_ships=*/false, cost_model);
  milp::MipSolution sol = milp::solve_mip(am.model, config);
  return detail::report_from_solution(inst, am, sol, Approach::Gcuc);
}

// MESC-I: one monolithic model, grid and ships solved together.
inline ScheduleReport solve_mesc_integrated(const Instance& inst,
                                            const milp::SolverConfig& config = {},
                                            const gcuc::CostModel& cost_model = {}) {
  AssembledModel am = assemble_model(inst, /*include_ships=*/true, cost_model);
  milp::MipSolution sol = milp::solve_mip(am.model, config);
  return detail::report_from_solution(inst, am, sol, Approach::MescIntegrated);
}

// MESC-IS: the integrated model with sailing pinned to zero. Ships stay at
// their initial ports but may still operate (and pay waiting fees otherwise).
inline ScheduleReport solve_mesc_stationary(const Instance& inst,
                                            const milp::SolverConfig& config = {},
                                            const gcuc::CostModel& cost_model = {}) {
  AssembledModel am = assemble_model(inst, /*include_ships=*/true, cost_model);
  if (am.with_ships) {
    for (int s = 0; s < am.ships.num_ships; ++s) {
      for (int a = 0; a < am.ships.num_arcs; ++a) {
        for (int t = 1; t <= inst.horizon; ++t) {
          am.model.set_variable_bounds(am.ships.vsail(s, a, t), 0.0, 0.0);
        }
      }
    }
  }
  milp::MipSolution sol = milp::solve_mip(am.model, config);
  return detail::report_from_solution(inst, am, sol, Approach::MescStationary);
}

// MESC-Sq: stage 1 solves plain GCUC; stage 2 re-solves the integrated model
// with every thermal commitment binary pinned to the stage-1 values. Stage
// objectives and timings are reported separately.
inline ScheduleReport solve_mesc_sequential(const Instance& inst,
                                            const milp::SolverConfig& config = {},
                                            const gcuc::CostModel& cost_model = {}) {
  AssembledModel stage1 = assemble_model(inst, /*include_ships=*/false, cost_model);
  milp::MipSolution sol1 = milp::solve_mip(stage1.model, config);
  if (!sol1.has_solution()) {
    ScheduleReport r = detail::report_from_solution(inst, stage1, sol1, Approach::MescSequential);
    r.has_stage1 = true;
    r.stage1_objective = sol1.objective;
    r.stage1_stats = detail::stats_from(sol1);
    return r;
  }

  AssembledModel stage2 = assemble_model(inst, /*include_ships=*/true, cost_model);
  const int T = inst.horizon;
  for (std::size_t g = 0; g < inst.generators.size(); ++g) {
    for (int t = 1; t <= T; ++t) {
      // Handle layouts of both stages match for the thermal block.
      int gi = static_cast<int>(g);
      double on = std::round(sol1.values[stage1.grid.on(gi, t)]);
      double su = std::round(sol1.values[stage1.grid.startup(gi, t)]);
      double sd = std::round(sol1.values[stage1.grid.shutdown(gi, t)]);
      stage2.model.set_variable_bounds(stage2.grid.on(gi, t), on, on);
      stage2.model.set_variable_bounds(stage2.grid.startup(gi, t), su, su);
      stage2.model.set_variable_bounds(stage2.grid.shutdown(gi, t), sd, sd);
    }
  }
  milp::MipSolution sol2 = milp::solve_mip(stage2.model, config);
  ScheduleReport r = detail::report_from_solution(inst, stage2, sol2, Approach::MescSequential);
  r.has_stage1 = true;
  r.stage1_objective = sol1.objective;
  r.stage1_stats = detail::stats_from(sol1);
  return r;
}

inline ScheduleReport solve_approach(const Instance& inst, Approach approach,
                                     const milp::SolverConfig& config = {},
                                     const gcuc::CostModel& cost_model = {}) {
  switch (approach) {
    case Approach::Gcuc: return solve_gcuc(inst, config, cost_model);
    case Approach::MescIntegrated: return solve_mesc_integrated(inst, config, cost_model);
    case Approach::MescSequential: return solve_mesc_sequential(inst, config, cost_model);
    case Approach::MescStationary: return solve_mesc_stationary(inst, config, cost_model);
  }
  throw ModelError("unknown approach");
}

struct ComparisonRow {
  Approach approach = Approach::Gcuc;
  milp::SolveStatus status = milp::SolveStatus::Infeasible;
  double objective = 0.0;
  double best_bound = 0.0;
  double relative_gap = 0.0;
  long nodes = 0;
  long simplex_iterations = 0;
  double wall_seconds = 0.0;
  double shed_mwh = 0.0;
  double ship_mwh = 0.0;
  double ship_total_cost = 0.0;
  double saving_vs_gcuc = 0.0;
  bool has_saving = false;
};

struct ComparisonResult {
  std::vector<ComparisonRow> rows;
  std::vector<ScheduleReport> reports;  // aligned with rows
};

// Runs each requested approach on the instance and tabulates objective, gap,
// effort and the ship/shed summary columns. Savings are relative to the GCUC
// row when one was requested.
inline ComparisonResult compare_approaches(const Instance& inst,
                                           const std::vector<Approach>& tags,
                                           const milp::SolverConfig& config = {},
                                           const gcuc::CostModel& cost_model = {}) {
  if (tags.empty()) throw ModelError("compare_approaches: at least one approach required");
  ComparisonResult out;
  double gcuc_objective = 0.0;
  bool have_gcuc = false;
  for (Approach tag : tags) {
    ScheduleReport rep = solve_approach(inst, tag, config, cost_model);
    ComparisonRow row;
    row.approach = tag;
    row.status = rep.stats.status;
    row.objective = rep.objective;
    row.best_bound = rep.stats.best_bound;
    row.relative_gap = rep.stats.relative_gap;
    row.nodes = rep.stats.nodes;
    row.simplex_iterations = rep.stats.simplex_iterations;
    row.wall_seconds = rep.stats.wall_seconds + (rep.has_stage1 ? rep.stage1_stats.wall_seconds : 0.0);
    row.shed_mwh = rep.total_shed_mwh();
    row.ship_mwh = rep.total_ship_mwh();
    row.ship_total_cost = rep.costs.ship_total();
    if (tag == Approach::Gcuc && !rep.approach_failed) {
      gcuc_objective = rep.objective;
      have_gcuc = true;
    }
    out.rows.push_back(row);
    out.reports.push_back(std::move(rep));
  }
  if (have_gcuc) {
    for (ComparisonRow& row : out.rows) {
      row.saving_vs_gcuc = gcuc_objective - row.objective;
      row.has_saving = true;
    }
  }
  return out;
}

// --- file outputs -----------------------------------------------------------

inline std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline void write_summary_csv(const ComparisonResult& cmp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("summary: cannot open '" + path + "' for writing");
  out << "approach,status,objective,best_bound,relative_gap,nodes,simplex_iterations,"
         "wall_seconds,shed_mwh,ship_mwh,ship_total_cost,saving_vs_gcuc\n";
  for (const ComparisonRow& r : cmp.rows) {
    out << to_string(r.approach) << ',' << milp::to_string(r.status) << ','
        << csv_number(r.objective) << ',' << csv_number(r.best_bound) << ','
        << csv_number(r.relative_gap) << ',' << r.nodes << ',' << r.simplex_iterations << ','
        << csv_number(r.wall_seconds) << ',' << csv_number(r.shed_mwh) << ','
        << csv_number(r.ship_mwh) << ',' << csv_number(r.ship_total_cost) << ','
        << (r.has_saving ? csv_number(r.saving_vs_gcuc) : std::string()) << "\n";
  }
  if (!out.good()) throw IoError("summary: write to '" + path + "' failed");
}

// Per-hour ship location/output table: one L (port bus, '|' while sailing)
// and one P column per ship.
inline void write_timeline_csv(const Instance& inst, const ScheduleReport& rep,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("timeline: cannot open '" + path + "' for writing");
  out << "hour";
  for (const std::string& name : rep.ship_names) out << ',' << name << "_L," << name << "_P";
  out << "\n";
  for (int t = 1; t <= rep.horizon; ++t) {
    out << t;
    for (std::size_t s = 0; s < rep.ships.size(); ++s) {
      const ShipHour& h = rep.ships[s][t - 1];
      out << ',';
      if (h.sailing) {
        out << '|';
      } else {
        int pos = inst.port_index(h.port_id);
        out << (pos >= 0 ? inst.ports[pos].bus : -1);
      }
      out << ',' << csv_number(h.power);
    }
    out << "\n";
  }
  if (!out.good()) throw IoError("timeline: write to '" + path + "' failed");
}

}  // namespace mesc
