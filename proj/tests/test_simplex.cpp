#include <catch2/catch_amalgamated.hpp>
#include <cstdint>

#include <cmath>
#include <limits>

#include "mesc/milp/model.hpp"
#include "mesc/milp/simplex.hpp"
#include "oracles.hpp"

using namespace mesc::milp;

TEST_CASE("add_variable hands out sequential ids and validates bounds") {
  MilpModel m;
  VarId u = m.add_variable(VarKind::Binary, 0, 1, "U_g1_t5");
  CHECK(u == 0);
  VarId p = m.add_variable(VarKind::Continuous, 0, 80, "P_ps1");
  CHECK(p == 1);
  CHECK(m.variable(p).upper == 80.0);
  CHECK_THROWS_AS(m.add_variable(VarKind::Continuous, 5, 3, "bad"), mesc::ModelError);
  CHECK_THROWS_AS(m.add_variable(VarKind::Binary, -1, 1, "bad_bin"), mesc::ModelError);
}

TEST_CASE("constraints reject duplicate ids and unknown variables") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 1, "x");
  CHECK_THROWS_AS(m.add_constraint({{x, 1.0}, {x, 2.0}}, Sense::LessEqual, 1.0),
                  mesc::ModelError);
  CHECK_THROWS_AS(m.add_constraint({{x + 7, 1.0}}, Sense::LessEqual, 1.0), mesc::ModelError);
}

TEST_CASE("single-constraint LP: min -x s.t. x <= 4") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 10, "x");
  m.add_constraint({{x, 1.0}}, Sense::LessEqual, 4.0);
  m.add_objective_term(x, -1.0);
  LpSolution sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.values[x] == Catch::Approx(4.0).margin(1e-9));
  CHECK(sol.objective == Catch::Approx(-4.0).margin(1e-9));
}

TEST_CASE("contradictory constraints are infeasible with a certificate row") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 10, "x");
  m.add_constraint({{x, 1.0}}, Sense::GreaterEqual, 2.0);
  m.add_constraint({{x, 1.0}}, Sense::LessEqual, 1.0);
  LpSolution sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Infeasible);
  CHECK(sol.certificate_row >= 0);
}

TEST_CASE("3-var fixture LP matches exhaustive vertex enumeration") {
  MilpModel m;
  VarId a = m.add_variable(VarKind::Continuous, 0, 12, "a");
  VarId b = m.add_variable(VarKind::Continuous, 0, 9, "b");
  VarId c = m.add_variable(VarKind::Continuous, 1, 7, "c");
  m.add_constraint({{a, 2.0}, {b, 1.0}, {c, 1.0}}, Sense::LessEqual, 14.0);
  m.add_constraint({{a, 1.0}, {b, 3.0}}, Sense::GreaterEqual, 6.0);
  m.add_constraint({{a, -1.0}, {b, 2.0}, {c, 2.0}}, Sense::Equal, 8.0);
  m.add_objective_term(a, -3.0);
  m.add_objective_term(b, 1.0);
  m.add_objective_term(c, 2.0);

  double oracle = oracles::enumerate_lp_minimum(m);
  LpSolution sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Catch::Approx(oracle).margin(1e-7));
}

TEST_CASE("unbounded LP detected") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, kInfinity, "x");
  VarId y = m.add_variable(VarKind::Continuous, 0, kInfinity, "y");
  m.add_constraint({{x, 1.0}, {y, -1.0}}, Sense::LessEqual, 1.0);
  m.add_objective_term(x, -1.0);
  LpSolution sol = solve_lp(m);
  CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("equality-heavy LP solves and respects the rows") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 100, "x");
  VarId y = m.add_variable(VarKind::Continuous, 0, 100, "y");
  VarId z = m.add_variable(VarKind::Continuous, 0, 100, "z");
  m.add_constraint({{x, 1.0}, {y, 1.0}, {z, 1.0}}, Sense::Equal, 30.0);
  m.add_constraint({{x, 1.0}, {y, -1.0}}, Sense::Equal, 4.0);
  m.add_objective_term(x, 2.0);
  m.add_objective_term(y, 3.0);
  m.add_objective_term(z, 1.0);
  LpSolution sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.values[x] - sol.values[y] == Catch::Approx(4.0).margin(1e-8));
  CHECK(sol.values[x] + sol.values[y] + sol.values[z] == Catch::Approx(30.0).margin(1e-8));
  // x=4,y=0,z=26 is the cheapest split.
  CHECK(sol.objective == Catch::Approx(2 * 4 + 0 + 26).margin(1e-7));
}

TEST_CASE("simplex is deterministic: identical pivot counts across runs") {
  MilpModel m;
  VarId a = m.add_variable(VarKind::Continuous, 0, 12, "a");
  VarId b = m.add_variable(VarKind::Continuous, 0, 9, "b");
  VarId c = m.add_variable(VarKind::Continuous, 1, 7, "c");
  m.add_constraint({{a, 2.0}, {b, 1.0}, {c, 1.0}}, Sense::LessEqual, 14.0);
  m.add_constraint({{a, 1.0}, {b, 3.0}}, Sense::GreaterEqual, 6.0);
  m.add_constraint({{a, -1.0}, {b, 2.0}, {c, 2.0}}, Sense::Equal, 8.0);
  m.add_objective_term(a, -3.0);
  m.add_objective_term(b, 1.0);

  LpSolution s1 = solve_lp(m);
  LpSolution s2 = solve_lp(m);
  CHECK(s1.iterations == s2.iterations);
  CHECK(s1.objective == s2.objective);
  REQUIRE(s1.values.size() == s2.values.size());
  for (std::size_t j = 0; j < s1.values.size(); ++j) CHECK(s1.values[j] == s2.values[j]);
}

TEST_CASE("anti-cycling: degenerate all-zero-rhs fixture with redundant rows terminates") {
  MilpModel m;
  VarId x1 = m.add_variable(VarKind::Continuous, 0, 1, "x1");
  VarId x2 = m.add_variable(VarKind::Continuous, 0, 1, "x2");
  VarId x3 = m.add_variable(VarKind::Continuous, 0, 1, "x3");
  for (int rep = 0; rep < 2; ++rep) {  // duplicated rows on purpose
    m.add_constraint({{x1, 1.0}, {x2, -1.0}}, Sense::LessEqual, 0.0);
    m.add_constraint({{x2, 1.0}, {x3, -1.0}}, Sense::LessEqual, 0.0);
    m.add_constraint({{x3, 1.0}, {x1, -1.0}}, Sense::LessEqual, 0.0);
    m.add_constraint({{x1, 1.0}, {x2, 1.0}, {x3, -2.0}}, Sense::LessEqual, 0.0);
  }
  m.add_objective_term(x1, -1.0);
  m.add_objective_term(x2, -1.0);
  m.add_objective_term(x3, -1.0);
  LpSolution sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Catch::Approx(-3.0).margin(1e-8));
}

TEST_CASE("anti-cycling: Beale's classic cycling example terminates at the optimum") {
  MilpModel m;
  VarId x4 = m.add_variable(VarKind::Continuous, 0, kInfinity, "x4");
  VarId x5 = m.add_variable(VarKind::Continuous, 0, kInfinity, "x5");
  VarId x6 = m.add_variable(VarKind::Continuous, 0, kInfinity, "x6");
  VarId x7 = m.add_variable(VarKind::Continuous, 0, kInfinity, "x7");
  m.add_constraint({{x4, 0.25}, {x5, -60.0}, {x6, -1.0 / 25.0}, {x7, 9.0}}, Sense::LessEqual, 0.0);
  m.add_constraint({{x4, 0.5}, {x5, -90.0}, {x6, -1.0 / 50.0}, {x7, 3.0}}, Sense::LessEqual, 0.0);
  m.add_constraint({{x6, 1.0}}, Sense::LessEqual, 1.0);
  m.add_objective_term(x4, -0.75);
  m.add_objective_term(x5, 150.0);
  m.add_objective_term(x6, -0.02);
  m.add_objective_term(x7, 6.0);
  LpSolution sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == Catch::Approx(-0.05).margin(1e-9));
}

TEST_CASE("warm start solves a re-bounded LP in few iterations") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 10, "x");
  VarId y = m.add_variable(VarKind::Continuous, 0, 10, "y");
  m.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::LessEqual, 12.0);
  m.add_objective_term(x, -2.0);
  m.add_objective_term(y, -1.0);

  SimplexSolver solver(m);
  LpSolution first = solver.solve();
  REQUIRE(first.status == LpStatus::Optimal);
  CHECK(first.objective == Catch::Approx(-22.0).margin(1e-9));

  solver.set_variable_bounds(x, 0, 5);
  LpSolution second = solver.solve();
  REQUIRE(second.status == LpStatus::Optimal);
  CHECK(second.objective == Catch::Approx(-17.0).margin(1e-9));
  CHECK(second.iterations <= first.iterations + 2);
}

TEST_CASE("scaling handles wide coefficient ranges") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 1e6, "x");
  VarId y = m.add_variable(VarKind::Continuous, 0, 1e6, "y");
  m.add_constraint({{x, 0.009}, {y, 1000.0}}, Sense::LessEqual, 90.0);
  m.add_constraint({{x, 1.0}, {y, -1.0}}, Sense::GreaterEqual, 0.0);
  m.add_objective_term(x, -0.009);
  m.add_objective_term(y, -1000.0);
  LpSolution sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  // Constraint binds: 0.009 x + 1000 y = 90, objective equals -90 at any split.
  CHECK(sol.objective == Catch::Approx(-90.0).margin(1e-6));
}

TEST_CASE("randomized small LPs agree with vertex enumeration") {
  // Deterministic LCG so the fixture set is stable.
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>((state >> 33) % 2000) / 100.0 - 10.0;  // [-10, 10)
  };
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    MilpModel m;
    const int n = 3;
    for (int j = 0; j < n; ++j) {
      double lo = std::min(next(), next());
      m.add_variable(VarKind::Continuous, lo, lo + std::abs(next()) + 0.5,
                     "v" + std::to_string(j));
    }
    const int rows = 3;
    for (int i = 0; i < rows; ++i) {
      std::vector<std::pair<VarId, double>> terms;
      for (int j = 0; j < n; ++j) {
        double c = next();
        if (std::abs(c) > 2.0) terms.push_back({j, c});
      }
      if (terms.empty()) terms.push_back({0, 1.0});
      Sense s = (i % 3 == 0) ? Sense::LessEqual : (i % 3 == 1 ? Sense::GreaterEqual : Sense::Equal);
      m.add_constraint(std::move(terms), s, next());
    }
    for (int j = 0; j < n; ++j) m.add_objective_term(j, next());

    double oracle = oracles::enumerate_lp_minimum(m);
    LpSolution sol = solve_lp(m);
    if (std::isfinite(oracle)) {
      REQUIRE(sol.status == LpStatus::Optimal);
      CHECK(sol.objective == Catch::Approx(oracle).margin(1e-6));
      ++solved;
    } else {
      CHECK(sol.status == LpStatus::Infeasible);
    }
  }
  CHECK(solved > 5);  // the generator must produce a healthy mix
}
