#pragma once

// Mobility-aware placement of the UAV's stream-processing pipeline onto
// ground edge servers. Memory is a hard per-server constraint; CPU and link
// delays enter through the critical-path tuple time, averaged over a
// forecast of UAV positions.

#include <vector>

#include "agtrack/netlinks.hpp"
#include "agtrack/world.hpp"

namespace agtrack {

struct DagComponent {
  double cycles = 0.0;  // cycles per tuple
  double memory = 0.0;  // bytes
};

struct DagEdge {
  int from = 0;
  int to = 0;
  double bits = 0.0;  // inter-component payload per tuple
};

struct StreamDag {
  std::vector<DagComponent> components;
  std::vector<DagEdge> edges;
  double uplink_bits = 0.0;  // UAV -> source payload per tuple
  int source = 0;            // component index ingesting the uplink

  // Throws if cyclic, or some component is unreachable from the source.
  // Returns a topological order starting at the source.
  std::vector<int> validate() const;
};

struct ServerProfile {
  int id = 0;
  Vec2 position;
  double frequency = 1.0;  // cycles/s
  double memory = 0.0;     // free bytes
};

// component index -> index into the server list
using Placement = std::vector<int>;

struct UavForecast {
  std::vector<std::pair<double, Vec2>> points;  // (time, predicted position)

  static UavForecast straight_line(Vec2 pos, Vec2 velocity, double horizon_s,
                                   int samples);
};

bool placement_feasible(const StreamDag& dag, const Placement& placement,
                        const std::vector<ServerProfile>& servers);

// Uplink latency to the source's server plus critical-path compute and
// inter-server transfer time. Throws on infeasible placement.
double estimate_tuple_time(const StreamDag& dag, const Placement& placement,
                           const std::vector<ServerProfile>& servers,
                           Vec2 uav_pos, const LinkSet& links);

double mean_forecast_cost(const StreamDag& dag, const Placement& placement,
                          const std::vector<ServerProfile>& servers,
                          const UavForecast& forecast, const LinkSet& links);

// Exhaustive when servers^components <= 10^4, greedy in topological order
// otherwise; ties broken toward lower server ids. Throws if no feasible
// placement exists.
Placement mra_place(const StreamDag& dag,
                    const std::vector<ServerProfile>& servers,
                    const UavForecast& forecast, const LinkSet& links);

enum class PlacementBaseline {
  Default,  // round-robin over servers in id order
  Ras,      // resource/communication aware at the current position only
};

Placement baseline_place(PlacementBaseline kind, const StreamDag& dag,
                         const std::vector<ServerProfile>& servers,
                         Vec2 uav_pos, const LinkSet& links);

}  // namespace agtrack
