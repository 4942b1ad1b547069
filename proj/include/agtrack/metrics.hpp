#pragma once

// Per-episode metrics and cross-seed aggregation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace agtrack {

struct EpisodeMetrics {
  double tracked_fraction = 0.0;
  int loss_events = 0;
  int reacquired = 0;
  std::optional<double> mean_reacquisition_time;  // absent when no losses
  double case3_seconds = 0.0;
  double flight_seconds = 0.0;
  double radio_joules = 0.0;
  std::optional<double> mean_tuple_latency;  // absent when no case-1 tasks
  double total_qoe_cost = 0.0;
  std::vector<double> competition_ratios;
};

struct Stat {
  double mean = 0.0;
  double sd = 0.0;  // population formula
  double min = 0.0;
  double max = 0.0;
  int count = 0;
};

struct Summary {
  int episodes = 0;
  std::map<std::string, Stat> stats;  // keyed by metric name
};

// Field-wise statistics; optional fields aggregate over the episodes that
// carry them. Throws std::invalid_argument on an empty list.
Summary aggregate(const std::vector<EpisodeMetrics>& episodes);

// Fixed metric name order used by CSV columns and the summary.
const std::vector<std::string>& metric_names();

std::optional<double> metric_value(const EpisodeMetrics& m,
                                   const std::string& name);

}  // namespace agtrack
