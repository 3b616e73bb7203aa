#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mesc/milp/lp_format.hpp"
#include "mesc/milp/model.hpp"

using namespace mesc::milp;

TEST_CASE("lp export emits the standard section skeleton") {
  MilpModel m;
  VarId u = m.add_variable(VarKind::Binary, 0, 1, "u_1");
  VarId p = m.add_variable(VarKind::Continuous, 0, 80, "p_1");
  m.add_constraint({{p, 1.0}, {u, -80.0}}, Sense::LessEqual, 0.0, "cap");
  m.add_objective_term(u, 74.33);
  m.add_objective_term(p, 15.4708);

  std::string text = lp_format_text(m);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("Bounds") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
  CHECK(text.find("u_1") != std::string::npos);
  CHECK(text.find("0 <= p_1 <= 80") != std::string::npos);
  CHECK(text.find("cap:") != std::string::npos);
}

TEST_CASE("binary section omitted for pure continuous models") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 1, "x");
  m.add_objective_term(x, 1.0);
  std::string text = lp_format_text(m);
  CHECK(text.find("Binaries") == std::string::npos);
}

TEST_CASE("duplicate variable names are an export pre-check error") {
  MilpModel m;
  m.add_variable(VarKind::Continuous, 0, 1, "same");
  m.add_variable(VarKind::Continuous, 0, 1, "same");
  CHECK_THROWS_AS(lp_format_text(m), mesc::ModelError);
}

TEST_CASE("unwritable path raises an I/O error") {
  MilpModel m;
  m.add_variable(VarKind::Continuous, 0, 1, "x");
  CHECK_THROWS_AS(export_lp_text(m, "/nonexistent-dir/model.lp"), mesc::IoError);
}

TEST_CASE("export to file round-trips through the filesystem") {
  MilpModel m;
  VarId x = m.add_variable(VarKind::Continuous, 0, 4, "x");
  m.add_objective_term(x, -1.0);
  std::string path = "test_model_out.lp";
  export_lp_text(m, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == lp_format_text(m));
  std::remove(path.c_str());
}
