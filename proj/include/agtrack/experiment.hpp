#pragma once

// Experiment execution over (strategy-config x seed), CSV/JSON emission,
// and parameter sweeps. Output bytes are deterministic: rows are sorted by
// (config, seed) regardless of how episodes were parallelized.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "agtrack/metrics.hpp"
#include "agtrack/scenario.hpp"
#include "agtrack/tracker.hpp"

namespace agtrack {

inline constexpr const char* kToolVersion = "0.1.0";

struct EpisodeRow {
  std::string config;
  std::uint64_t seed = 0;
  EpisodeMetrics metrics;
};

struct ExperimentResult {
  std::string scenario_name;
  std::vector<EpisodeRow> rows;                        // sorted (config, seed)
  std::vector<std::pair<std::string, Summary>> summaries;  // per config
};

ExperimentResult run_experiment(const Scenario& scenario, int jobs = 1);

std::string to_csv(const ExperimentResult& result);
nlohmann::json to_json(const ExperimentResult& result,
                       const std::string& digest);

// Sweep: one experiment per value of a numeric scenario field, shared seeds.
struct SweepResult {
  std::string parameter;
  std::vector<std::pair<double, ExperimentResult>> runs;
};

SweepResult run_sweep(const nlohmann::json& scenario_doc,
                      const std::string& parameter_path,
                      const std::vector<double>& values, int jobs = 1);

std::string to_csv(const SweepResult& result);

struct RunReport {
  std::vector<std::string> outputs;
  std::string digest;
  std::string version;
  std::vector<std::uint64_t> seeds;
};

// FNV-1a over the input bytes; stable across machines.
std::string config_digest(const std::string& bytes);

}  // namespace agtrack
