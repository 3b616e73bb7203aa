#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "mesc/instance.hpp"

using namespace mesc;

namespace {

nlohmann::json tiny_doc() {
  return nlohmann::json::parse(R"({
    "horizon": 4,
    "penalties": { "shed_cost": 1000.0, "shed_factor": 1.0 },
    "buses": [
      { "id": 1, "reference": true, "angle_max": 1.0 },
      { "id": 2, "angle_max": 1.0 }
    ],
    "lines": [ { "id": 1, "from": 1, "to": 2, "reactance": 0.2, "flow_max": 60.0 } ],
    "generators": [
      { "id": 1, "bus": 1, "cost_a": 10, "cost_b": 20,
        "p_min": 0, "p_max": 100, "ramp_up": 100, "ramp_down": 100 }
    ],
    "ports": [
      { "id": 1, "bus": 1, "operating_capacity": 2, "berth_capacity": 4 },
      { "id": 2, "bus": 2, "operating_capacity": 2, "berth_capacity": 4 }
    ],
    "ships": [
      { "id": 1, "initial_port": 1, "cost_a": 74.33, "cost_b": 15.4708,
        "p_min": 5, "p_max": 30, "ramp_up": 30, "ramp_down": 30,
        "startup_cost": 45, "shutdown_cost": 45,
        "entering_cost": 200, "departure_cost": 235, "waiting_cost": 55,
        "sailing_cost": 250, "travel_hours": 2 }
    ],
    "demand": [ [10, 20, 30, 20], [5, 10, 15, 10] ],
    "routes": "all"
  })");
}

}  // namespace

TEST_CASE("bundled six-bus dataset parses with ports at buses 2,3,4,6") {
  Instance inst = parse_instance(std::string(MESC_DATA_DIR) + "/six_bus.json");
  CHECK(inst.buses.size() == 6);
  REQUIRE(inst.ports.size() == 4);
  std::vector<int> port_buses;
  for (const Port& p : inst.ports) port_buses.push_back(p.bus);
  CHECK(port_buses == std::vector<int>{2, 3, 4, 6});
  CHECK(inst.ships.size() == 2);
  CHECK(inst.shed_cost == 1000.0);
}

TEST_CASE("minimal single-period instance is valid") {
  Instance inst = parse_instance(std::string(MESC_DATA_DIR) + "/minimal.json");
  CHECK(inst.buses.size() == 1);
  CHECK(inst.generators.size() == 1);
  CHECK(inst.ships.empty());
  CHECK(inst.horizon == 1);
  CHECK(validate_instance(inst).empty());
}

TEST_CASE("dangling bus reference is a reference error") {
  nlohmann::json doc = tiny_doc();
  doc["lines"][0]["to"] = 99;
  CHECK_THROWS_AS(instance_from_json(doc), ReferenceError);
}

TEST_CASE("missing demand entries are rejected, not defaulted to zero") {
  nlohmann::json doc = tiny_doc();
  doc["demand"][1] = {5, 10, 15};  // one hour short
  CHECK_THROWS_AS(instance_from_json(doc), ParseError);
  doc = tiny_doc();
  doc["demand"].erase(1);  // one bus missing
  CHECK_THROWS_AS(instance_from_json(doc), ParseError);
}

TEST_CASE("validation findings name the violated invariant") {
  SECTION("uniform ship travel time passes") {
    Instance inst = instance_from_json(tiny_doc());
    CHECK(validate_instance(inst).empty());
  }

  SECTION("shed factor above one") {
    Instance inst = instance_from_json(tiny_doc());
    inst.shed_factor = 1.5;
    auto findings = validate_instance(inst);
    REQUIRE_FALSE(findings.empty());
    CHECK(findings[0].code == "shed-factor");
    CHECK(findings[0].message.find("out of [0,1]") != std::string::npos);
  }

  SECTION("two ports on the same bus") {
    nlohmann::json doc = tiny_doc();
    doc["ports"][1]["bus"] = 1;
    Instance inst = instance_from_json(doc);
    bool found = false;
    for (const auto& f : validate_instance(inst)) found |= (f.code == "port-bus-injective");
    CHECK(found);
  }

  SECTION("missing travel time") {
    nlohmann::json doc = tiny_doc();
    doc["ships"][0].erase("travel_hours");
    Instance inst = instance_from_json(doc);
    bool found = false;
    for (const auto& f : validate_instance(inst)) found |= (f.code == "ship-travel-time");
    CHECK(found);
  }
}

TEST_CASE("route set is deterministic, sorted, and excludes self-loops") {
  SECTION("fully connected: n(n-1) ordered pairs") {
    Instance inst = parse_instance(std::string(MESC_DATA_DIR) + "/six_bus.json");
    CHECK(routes(inst).size() == 12);  // 4 ports
    auto r1 = routes(inst);
    auto r2 = routes(inst);
    CHECK(r1 == r2);
    CHECK(std::is_sorted(r1.begin(), r1.end()));
    for (const auto& [a, b] : r1) CHECK(a != b);
  }

  SECTION("two ports") {
    Instance inst = instance_from_json(tiny_doc());
    CHECK(routes(inst) == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
  }

  SECTION("restricted route file") {
    nlohmann::json doc = tiny_doc();
    doc["routes"] = {{1, 2}, {2, 1}};
    Instance inst = instance_from_json(doc);
    CHECK(routes(inst).size() == 2);
  }

  SECTION("self-loop route rejected at parse") {
    nlohmann::json doc = tiny_doc();
    doc["routes"] = {{1, 1}};
    CHECK_THROWS_AS(instance_from_json(doc), ParseError);
  }
}

TEST_CASE("instance json round-trips field by field") {
  Instance inst = parse_instance(std::string(MESC_DATA_DIR) + "/six_bus.json");
  std::string path = "roundtrip_instance.json";
  save_instance(inst, path);
  Instance again = parse_instance(path);
  CHECK(inst == again);
  std::remove(path.c_str());

  Instance tiny = instance_from_json(tiny_doc());
  Instance tiny_again = instance_from_json(instance_to_json(tiny));
  CHECK(tiny == tiny_again);
}

TEST_CASE("bundled datasets validate cleanly") {
  for (const char* name : {"/six_bus.json", "/minimal.json"}) {
    Instance inst = parse_instance(std::string(MESC_DATA_DIR) + name);
    auto findings = validate_instance(inst);
    for (const auto& f : findings) INFO(f.code << ": " << f.message);
    CHECK(findings.empty());
  }
}
