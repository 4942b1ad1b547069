#include "doctest.h"

#include "agtrack/scenario.hpp"

using namespace agtrack;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "world": {
      "roads": {"nodes": [[0,0],[100,0]], "edges": [[0,1]]},
      "target": {"start_edge": 0, "speed": 5.0},
      "uav": {"position": [0,0]}
    },
    "links": {
      "uav_lte": {"rate": 2e7},
      "camera_lan": {"rate": 1e9},
      "camera_wifi": {"rate": 5e7}
    },
    "episode": {"duration": 10}
  })");
}

}  // namespace

TEST_CASE("minimal scenario parses with defaults") {
  Scenario sc = parse_scenario(minimal());
  CHECK(sc.uav.battery_s == 1800.0);
  CHECK(sc.episode.tick == 0.1);
  CHECK(sc.episode.seeds.size() == 50);  // default seed list 0..49
  CHECK(sc.configs.size() == 1);
  CHECK(sc.configs[0].asrt);
  // no cluster resources configured: placement and routing default off
  CHECK(sc.configs[0].mra == MraMode::Off);
  CHECK(sc.configs[0].case3 == Case3Route::Off);
  CHECK(sc.params.tau_occ == 2.0);
  CHECK(sc.params.tau_lost == 15.0);
}

TEST_CASE("missing sections report their field path") {
  json j = minimal();
  j.erase("links");
  try {
    parse_scenario(j);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.path == "links");
  }

  j = minimal();
  j["links"].erase("camera_lan");
  try {
    parse_scenario(j);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.path == "links.camera_lan");
  }

  j = minimal();
  j["world"]["roads"].erase("edges");
  try {
    parse_scenario(j);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.path == "world.roads.edges");
  }
}

TEST_CASE("type violations report the leaf path") {
  json j = minimal();
  j["world"]["target"]["speed"] = "fast";
  try {
    parse_scenario(j);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.path == "world.target.speed");
  }
}

TEST_CASE("range violations") {
  json j = minimal();
  j["world"]["uav"]["battery_s"] = 1801.0;
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);

  j = minimal();
  j["world"]["uav"]["battery_s"] = 0.0;
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);

  j = minimal();
  j["world"]["target"]["start_edge"] = 5;
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);

  j = minimal();
  j["strategies"] = {{"tau_occ", 5.0}, {"tau_lost", 3.0}, {"mra", "off"},
                     {"case3", "off"}, {"asrt", false}};
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);
}

TEST_CASE("disconnected road graph is rejected") {
  json j = minimal();
  j["world"]["roads"]["nodes"] = {{0, 0}, {100, 0}, {500, 500}, {600, 500}};
  j["world"]["roads"]["edges"] = {{0, 1}, {2, 3}};
  try {
    parse_scenario(j);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.path == "world.roads");
  }
}

TEST_CASE("strategy toggles require matching resources") {
  json j = minimal();
  // default toggles are mra=on, but no cluster section is given
  j["strategies"] = {{"mra", "mra"}, {"asrt", true}, {"case3", "off"}};
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);

  j["strategies"] = {{"mra", "off"}, {"asrt", true}, {"case3", "qoe"}};
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);  // no terminal profile

  j["strategies"] = {{"mra", "off"}, {"asrt", true}, {"case3", "cacat"}};
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);  // no edge nodes

  j["strategies"] = {{"mra", "off"}, {"asrt", true}, {"case3", "off"}};
  CHECK_NOTHROW(parse_scenario(j));
}

TEST_CASE("lan edges must reference declared cameras") {
  json j = minimal();
  j["world"]["cameras"] = {{{"id", 0}, {"position", {50, 0}}, {"radius", 40}}};
  j["world"]["lan"] = {{0, 9, 0.001}};
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);
}

TEST_CASE("duplicate camera ids are rejected") {
  json j = minimal();
  j["world"]["cameras"] = {{{"id", 3}, {"position", {50, 0}}, {"radius", 40}},
                           {{"id", 3}, {"position", {80, 0}}, {"radius", 40}}};
  CHECK_THROWS_AS(parse_scenario(j), ScenarioError);
}

TEST_CASE("override replaces a numeric leaf") {
  json j = minimal();
  apply_override(j, "world.target.speed", "7.5");
  Scenario sc = parse_scenario(j);
  CHECK(sc.target.speed == 7.5);
}

TEST_CASE("override rejects missing paths and type changes") {
  json j = minimal();
  CHECK_THROWS_AS(apply_override(j, "world.target.velocity", "7.5"),
                  ScenarioError);
  CHECK_THROWS_AS(apply_override(j, "no.such.path", "1"), ScenarioError);
  CHECK_THROWS_AS(apply_override(j, "world.target.speed", "fast"),
                  ScenarioError);
}

TEST_CASE("named configs inherit and override the base toggles") {
  json j = minimal();
  j["strategies"] = {
      {"mra", "off"},
      {"asrt", true},
      {"case3", "off"},
      {"configs",
       {{{"name", "a"}}, {{"name", "b"}, {"asrt", false}}}}};
  Scenario sc = parse_scenario(j);
  REQUIRE(sc.configs.size() == 2);
  CHECK(sc.configs[0].name == "a");
  CHECK(sc.configs[0].asrt);
  CHECK(sc.configs[1].name == "b");
  CHECK_FALSE(sc.configs[1].asrt);
  CHECK(sc.configs[1].mra == MraMode::Off);
}

TEST_CASE("reference scenario files load") {
  for (const char* name : {"reference.json", "occlusion.json", "pursuit.json"}) {
    std::string path = std::string(AGTRACK_SCENARIO_DIR) + "/" + name;
    CHECK_NOTHROW(load_scenario(path));
  }
}

TEST_CASE("unreadable file raises an io failure") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/file.json"),
                  std::ios_base::failure);
}
