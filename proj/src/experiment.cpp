#include "agtrack/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <future>
#include <sstream>

namespace agtrack {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string cell(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

void append_metric_cells(std::ostringstream& out, const EpisodeMetrics& m) {
  for (const std::string& name : metric_names()) {
    out << ',' << cell(metric_value(m, name));
  }
}

}  // namespace

ExperimentResult run_experiment(const Scenario& scenario, int jobs) {
  ExperimentResult result;
  result.scenario_name = scenario.name;

  struct Job {
    const StrategyToggles* toggles;
    std::uint64_t seed;
  };
  std::vector<Job> todo;
  for (const StrategyToggles& t : scenario.configs) {
    for (std::uint64_t seed : scenario.episode.seeds) {
      todo.push_back({&t, seed});
    }
  }

  std::vector<EpisodeMetrics> metrics(todo.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < todo.size(); ++i) {
      metrics[i] = run_episode(scenario, *todo[i].toggles, todo[i].seed).metrics;
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= todo.size()) break;
        metrics[i] =
            run_episode(scenario, *todo[i].toggles, todo[i].seed).metrics;
      }
    };
    std::vector<std::future<void>> pool;
    for (int w = 0; w < jobs; ++w) {
      pool.push_back(std::async(std::launch::async, worker));
    }
    for (auto& f : pool) f.get();
  }

  for (std::size_t i = 0; i < todo.size(); ++i) {
    result.rows.push_back({todo[i].toggles->name, todo[i].seed, metrics[i]});
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const EpisodeRow& a, const EpisodeRow& b) {
                     if (a.config != b.config) return a.config < b.config;
                     return a.seed < b.seed;
                   });

  for (const StrategyToggles& t : scenario.configs) {
    std::vector<EpisodeMetrics> per_config;
    for (const EpisodeRow& row : result.rows) {
      if (row.config == t.name) per_config.push_back(row.metrics);
    }
    result.summaries.emplace_back(t.name, aggregate(per_config));
  }
  return result;
}

std::string to_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "scenario,config,seed,stat";
  for (const std::string& name : metric_names()) out << ',' << name;
  out << '\n';
  for (const EpisodeRow& row : result.rows) {
    out << result.scenario_name << ',' << row.config << ',' << row.seed << ',';
    append_metric_cells(out, row.metrics);
    out << '\n';
  }
  for (const auto& [config, summary] : result.summaries) {
    for (const char* stat : {"mean", "sd", "min", "max"}) {
      out << result.scenario_name << ',' << config << ",," << stat;
      for (const std::string& name : metric_names()) {
        auto it = summary.stats.find(name);
        if (it == summary.stats.end()) {
          out << ',';
          continue;
        }
        const Stat& s = it->second;
        double v = std::string(stat) == "mean"  ? s.mean
                   : std::string(stat) == "sd"  ? s.sd
                   : std::string(stat) == "min" ? s.min
                                                : s.max;
        out << ',' << fmt(v);
      }
      out << '\n';
    }
  }
  return out.str();
}

nlohmann::json to_json(const ExperimentResult& result,
                       const std::string& digest) {
  nlohmann::json j;
  j["scenario"] = result.scenario_name;
  j["metadata"] = {{"version", kToolVersion},
                   {"digest", digest},
                   {"sd", "population"}};
  nlohmann::json configs = nlohmann::json::array();
  for (const auto& [config, summary] : result.summaries) {
    nlohmann::json c;
    c["name"] = config;
    nlohmann::json episodes = nlohmann::json::array();
    for (const EpisodeRow& row : result.rows) {
      if (row.config != config) continue;
      nlohmann::json e;
      e["seed"] = row.seed;
      for (const std::string& name : metric_names()) {
        auto v = metric_value(row.metrics, name);
        if (v) e[name] = *v;
      }
      episodes.push_back(e);
    }
    c["episodes"] = episodes;
    nlohmann::json stats;
    for (const auto& [name, s] : summary.stats) {
      stats[name] = {{"mean", s.mean}, {"sd", s.sd},   {"min", s.min},
                     {"max", s.max},   {"count", s.count}};
    }
    c["summary"] = stats;
    configs.push_back(c);
  }
  j["configs"] = configs;
  return j;
}

SweepResult run_sweep(const nlohmann::json& scenario_doc,
                      const std::string& parameter_path,
                      const std::vector<double>& values, int jobs) {
  if (values.empty()) throw ScenarioError(parameter_path, "empty sweep value list");
  {
    // the swept field must already exist and be numeric
    const nlohmann::json* node = &scenario_doc;
    std::istringstream path(parameter_path);
    std::string part;
    while (std::getline(path, part, '.')) {
      if (!node->is_object() || !node->contains(part)) {
        throw ScenarioError(parameter_path, "sweep path does not exist");
      }
      node = &node->at(part);
    }
    if (!node->is_number()) {
      throw ScenarioError(parameter_path, "sweep target is not numeric");
    }
  }
  SweepResult result;
  result.parameter = parameter_path;
  for (double v : values) {
    nlohmann::json doc = scenario_doc;
    apply_override(doc, parameter_path, fmt(v));
    Scenario sc = parse_scenario(doc);
    result.runs.emplace_back(v, run_experiment(sc, jobs));
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "param,value,scenario,config,seed,stat";
  for (const std::string& name : metric_names()) out << ',' << name;
  out << '\n';
  for (const auto& [value, exp] : result.runs) {
    std::string body = to_csv(exp);
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);  // drop per-run header
    while (std::getline(lines, line)) {
      out << result.parameter << ',' << fmt(value) << ',' << line << '\n';
    }
  }
  return out.str();
}

std::string config_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace agtrack
