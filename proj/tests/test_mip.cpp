#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <unordered_map>

#include "mesc/milp/branch_and_bound.hpp"
#include "mesc/milp/model.hpp"
#include "mesc/milp/simplex.hpp"
#include "oracles.hpp"

using namespace mesc::milp;

namespace {

double lp_min(const MilpModel& m) {
  LpSolution s = solve_lp(m);
  if (s.status != LpStatus::Optimal) return kInfinity;
  return s.objective;
}

// Knapsack-style fixture: pick items to cover a demand at minimum cost.
MilpModel knapsack_fixture() {
  MilpModel m;
  const double cost[8] = {4.1, 2.3, 7.9, 3.3, 5.2, 1.7, 6.4, 2.9};
  const double size[8] = {3.0, 2.0, 6.0, 3.0, 4.0, 1.0, 5.0, 2.0};
  std::vector<std::pair<VarId, double>> cover;
  for (int i = 0; i < 8; ++i) {
    VarId x = m.add_variable(VarKind::Binary, 0, 1, "x" + std::to_string(i));
    m.add_objective_term(x, cost[i]);
    cover.push_back({x, size[i]});
  }
  m.add_constraint(cover, Sense::GreaterEqual, 11.0);
  return m;
}

}  // namespace

TEST_CASE("pure-LP model: solve_mip equals solve_lp") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 10, "x");
  VarId y = m.add_variable(VarKind::Continuous, 0, 10, "y");
  m.add_constraint({{x, 1.0}, {y, 2.0}}, Sense::LessEqual, 10.0);
  m.add_objective_term(x, -1.0);
  m.add_objective_term(y, -1.0);

  LpSolution lp = solve_lp(m);
  MipSolution mip = solve_mip(m);
  REQUIRE(lp.status == LpStatus::Optimal);
  REQUIRE(mip.status == SolveStatus::Optimal);
  CHECK(mip.objective == Catch::Approx(lp.objective).margin(1e-9));
  CHECK(mip.relative_gap == 0.0);
}

TEST_CASE("8-binary knapsack fixture matches exhaustive enumeration") {
  MilpModel m = knapsack_fixture();
  double oracle = oracles::enumerate_mip_minimum(m, lp_min);
  MipSolution mip = solve_mip(m);
  REQUIRE(mip.status == SolveStatus::Optimal);
  CHECK(mip.objective == Catch::Approx(oracle).margin(1e-6));
  // Weak duality and the LP relaxation bound.
  CHECK(mip.best_bound <= mip.objective + 1e-9);
  CHECK(lp_min(m) <= mip.objective + 1e-9);
  // Binary values are integral within tolerance.
  for (VarId j : m.binary_variables()) {
    CHECK(std::abs(mip.values[j] - std::round(mip.values[j])) <= 1e-6);
  }
}

TEST_CASE("infeasible integer model reported infeasible") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Binary, 0, 1, "x");
  VarId y = m.add_variable(VarKind::Binary, 0, 1, "y");
  m.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::GreaterEqual, 1.5);
  m.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::LessEqual, 1.2);
  MipSolution mip = solve_mip(m);
  CHECK(mip.status == SolveStatus::Infeasible);
}

TEST_CASE("fix_binaries pins bounds and rejects non-binary targets") {
  MilpModel m;
  VarId u = m.add_variable(VarKind::Binary, 0, 1, "u");
  VarId p = m.add_variable(VarKind::Continuous, 0, 5, "p");
  m.add_constraint({{p, 1.0}, {u, -5.0}}, Sense::LessEqual, 0.0);
  m.add_objective_term(p, -1.0);

  SECTION("empty assignment leaves the model unchanged") {
    MilpModel same = fix_binaries(m, {});
    CHECK(same.variable(u).lower == 0.0);
    CHECK(same.variable(u).upper == 1.0);
    MipSolution a = solve_mip(m);
    MipSolution b = solve_mip(same);
    CHECK(a.objective == Catch::Approx(b.objective));
  }

  SECTION("fixing changes the optimum") {
    MilpModel off = fix_binaries(m, {{u, 0}});
    MipSolution sol = solve_mip(off);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == Catch::Approx(0.0).margin(1e-9));
  }

  SECTION("continuous variable rejected") {
    CHECK_THROWS_AS(fix_binaries(m, {{p, 1}}), mesc::ModelError);
  }
}

TEST_CASE("solve_mip is bit-reproducible in single-worker mode") {
  MilpModel m = knapsack_fixture();
  MipSolution a = solve_mip(m);
  MipSolution b = solve_mip(m);
  CHECK(a.nodes == b.nodes);
  CHECK(a.objective == b.objective);
  CHECK(a.simplex_iterations == b.simplex_iterations);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t j = 0; j < a.values.size(); ++j) CHECK(a.values[j] == b.values[j]);
}

TEST_CASE("node limit reports feasible-gap") {
  MilpModel m = knapsack_fixture();
  SolverConfig cfg;
  cfg.node_limit = 1;
  MipSolution sol = solve_mip(m, cfg);
  CHECK((sol.status == SolveStatus::FeasibleGap || sol.status == SolveStatus::Optimal));
}

TEST_CASE("mixed-integer model with continuous recourse") {
  // min 10 u1 + 10 u2 + 3 p1 + 1 p2  s.t. p1 + p2 = 7, p_i <= 5 u_i.
  MilpModel m;
  VarId u1 = m.add_variable(VarKind::Binary, 0, 1, "u1");
  VarId u2 = m.add_variable(VarKind::Binary, 0, 1, "u2");
  VarId p1 = m.add_variable(VarKind::Continuous, 0, 5, "p1");
  VarId p2 = m.add_variable(VarKind::Continuous, 0, 5, "p2");
  m.add_constraint({{p1, 1.0}, {u1, -5.0}}, Sense::LessEqual, 0.0);
  m.add_constraint({{p2, 1.0}, {u2, -5.0}}, Sense::LessEqual, 0.0);
  m.add_constraint({{p1, 1.0}, {p2, 1.0}}, Sense::Equal, 7.0);
  m.add_objective_term(u1, 10.0);
  m.add_objective_term(u2, 10.0);
  m.add_objective_term(p1, 3.0);
  m.add_objective_term(p2, 1.0);

  double oracle = oracles::enumerate_mip_minimum(m, lp_min);
  MipSolution mip = solve_mip(m);
  REQUIRE(mip.status == SolveStatus::Optimal);
  CHECK(mip.objective == Catch::Approx(oracle).margin(1e-6));
  // Both units on, p2 at its cap: 10+10+3*2+1*5 = 31.
  CHECK(mip.objective == Catch::Approx(31.0).margin(1e-6));
}

TEST_CASE("randomized small MIPs agree with brute-force enumeration") {
  std::uint64_t state = 0x243f6a8885a308d3ull;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>((state >> 33) % 2000) / 100.0 - 10.0;
  };
  int feasible_count = 0;
  for (int trial = 0; trial < 25; ++trial) {
    MilpModel m;
    const int nb = 6, nc = 2;
    for (int j = 0; j < nb; ++j) m.add_variable(VarKind::Binary, 0, 1, "b" + std::to_string(j));
    for (int j = 0; j < nc; ++j) {
      m.add_variable(VarKind::Continuous, 0, 5 + std::abs(next()), "c" + std::to_string(j));
    }
    for (int i = 0; i < 4; ++i) {
      std::vector<std::pair<VarId, double>> terms;
      for (int j = 0; j < nb + nc; ++j) {
        double c = next();
        if (std::abs(c) > 4.0) terms.push_back({j, c});
      }
      if (terms.empty()) terms.push_back({i % (nb + nc), 1.0});
      Sense s = (i % 2 == 0) ? Sense::LessEqual : Sense::GreaterEqual;
      m.add_constraint(std::move(terms), s, next() * 0.5);
    }
    for (int j = 0; j < nb + nc; ++j) m.add_objective_term(j, next());

    double oracle = oracles::enumerate_mip_minimum(m, lp_min);
    MipSolution mip = solve_mip(m);
    if (std::isfinite(oracle)) {
      REQUIRE(mip.status == SolveStatus::Optimal);
      CHECK(mip.objective == Catch::Approx(oracle).margin(1e-6));
      CHECK(mip.best_bound <= mip.objective + 1e-9);
      ++feasible_count;
    } else {
      CHECK(mip.status == SolveStatus::Infeasible);
    }
  }
  CHECK(feasible_count > 5);
}
