#pragma once

// Scenario file schema: loading, validation with field-path errors, and
// dotted-path overrides.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "agtrack/asrt.hpp"
#include "agtrack/cacat.hpp"
#include "agtrack/mra.hpp"
#include "agtrack/netlinks.hpp"
#include "agtrack/qoe.hpp"
#include "agtrack/world.hpp"

namespace agtrack {

// Raised on schema violations; path names the offending field
// (e.g. "links.camera_lan").
struct ScenarioError : std::runtime_error {
  std::string path;
  ScenarioError(std::string field_path, const std::string& what)
      : std::runtime_error(field_path + ": " + what), path(std::move(field_path)) {}
};

enum class MraMode { Off, Mra, Ras, Default };
enum class Case3Route { Off, Qoe, Cacat };

struct StrategyToggles {
  std::string name = "default";
  MraMode mra = MraMode::Mra;
  bool asrt = true;
  Case3Route case3 = Case3Route::Qoe;
};

struct StrategyParams {
  int k_max = 3;
  double activation_bits = 1e6;
  double tau_occ = 2.0;
  double tau_lost = 15.0;
  double p_detect = 0.9;
  double case3_radius = 300.0;
  double recognition_bits = 8e6;
  double recognition_cycles = 1e8;
  int frames_per_task = 8;
  int chunk = 2;
  int max_rounds = 4;
  double round_duration = 0.5;
  double penalty = 0.0;  // 0 = derived as 10x max node cost
  double forecast_horizon = 10.0;
  int forecast_samples = 5;
};

struct EpisodeParams {
  double duration = 120.0;
  double tick = 0.1;
  double recognition_interval = 1.0;
  double camera_interval = 1.0;
  std::vector<std::uint64_t> seeds;
};

struct Scenario {
  std::string name = "scenario";

  RoadGraph roads;
  std::vector<Obstacle> obstacles;
  struct {
    int start_edge = 0;
    double speed = 5.0;
    double v_min = 0.0;
    double v_max = 10.0;
  } target;
  struct {
    Vec2 position;
    double max_speed = 15.0;
    double battery_s = 1800.0;
    double sense_radius = 100.0;
  } uav;
  CameraGraph cameras;

  LinkSet links;

  // cluster resources
  std::vector<ServerProfile> servers;
  StreamDag dag;
  std::vector<TerminalProfile> terminals;
  EdgeServerProfile edge_server;
  double bandwidth = 10e6;
  QoeWeights weights;
  std::vector<EdgeNodeProfile> cacat_nodes;

  StrategyParams params;
  std::vector<StrategyToggles> configs;
  EpisodeParams episode;

  double effective_penalty() const;
};

// Parse + validate; throws ScenarioError with a field path on violations.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);  // throws std::ios_base::failure if unreadable

// Applies "dotted.path=value" into the raw JSON document; throws
// ScenarioError if the path does not address an existing scalar field.
void apply_override(nlohmann::json& doc, const std::string& dotted_path,
                    const std::string& value);

}  // namespace agtrack
