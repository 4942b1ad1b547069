#pragma once

// Episode orchestration: the three-case tracking loop tying world, links,
// and strategies together.

#include <cstdint>
#include <optional>

#include "agtrack/metrics.hpp"
#include "agtrack/scenario.hpp"
#include "agtrack/sim.hpp"

namespace agtrack {

enum class TrackingCase { Case1Tracking, Case2AboutToLose, Case3Lost };

const char* to_string(TrackingCase c);

// CASE1 if the UAV saw the target within tau_occ, CASE2 if unseen for
// (tau_occ, tau_lost], CASE3 beyond that. A target never seen counts as
// unseen since t=0.
TrackingCase classify_state(std::optional<double> last_seen_time, double now,
                            double tau_occ, double tau_lost);

struct EpisodeResult {
  EpisodeMetrics metrics;
  std::vector<TraceRecord> trace;
};

EpisodeResult run_episode(const Scenario& scenario,
                          const StrategyToggles& toggles, std::uint64_t seed);

}  // namespace agtrack
