// Python bindings: scenario loading, episode/experiment execution, and the
// brute-force oracles. Structured results cross the boundary as parsed JSON
// (dicts/lists) to keep the surface small.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "agtrack/experiment.hpp"
#include "agtrack/oracles.hpp"
#include "agtrack/scenario.hpp"
#include "agtrack/tracker.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace agtrack;

namespace {

py::object json_to_py(const json& j) {
  py::module_ pyjson = py::module_::import("json");
  return pyjson.attr("loads")(j.dump());
}

Scenario scenario_from_text(const std::string& text,
                            const std::vector<std::string>& sets) {
  json doc = json::parse(text);
  for (const std::string& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ScenarioError(s, "override expects PATH=VALUE");
    }
    apply_override(doc, s.substr(0, eq), s.substr(eq + 1));
  }
  return parse_scenario(doc);
}

json metrics_to_json(const EpisodeMetrics& m) {
  json j;
  for (const std::string& name : metric_names()) {
    auto v = metric_value(m, name);
    if (v) j[name] = *v;
  }
  j["competition_ratios"] = m.competition_ratios;
  return j;
}

}  // namespace

PYBIND11_MODULE(_agtrack, m) {
  m.doc() = "air-ground cooperative target tracking simulator";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ScenarioError>(m, "ScenarioError");

  m.def(
      "validate_scenario",
      [](const std::string& text, const std::vector<std::string>& sets) {
        Scenario sc = scenario_from_text(text, sets);
        json j;
        j["name"] = sc.name;
        j["configs"] = json::array();
        for (const StrategyToggles& t : sc.configs) j["configs"].push_back(t.name);
        j["seeds"] = sc.episode.seeds;
        j["duration"] = sc.episode.duration;
        return json_to_py(j);
      },
      py::arg("text"), py::arg("sets") = std::vector<std::string>{},
      "Parse and validate scenario JSON text; returns a short description.");

  m.def(
      "run_episode",
      [](const std::string& text, const std::string& config,
         std::uint64_t seed, const std::vector<std::string>& sets) {
        Scenario sc = scenario_from_text(text, sets);
        const StrategyToggles* toggles = nullptr;
        for (const StrategyToggles& t : sc.configs) {
          if (t.name == config) toggles = &t;
        }
        if (!toggles) throw std::invalid_argument("no config named " + config);
        EpisodeResult r = run_episode(sc, *toggles, seed);
        return json_to_py(metrics_to_json(r.metrics));
      },
      py::arg("text"), py::arg("config"), py::arg("seed") = 0,
      py::arg("sets") = std::vector<std::string>{},
      "Run one episode; returns the metrics as a dict.");

  m.def(
      "run_experiment",
      [](const std::string& text, int jobs,
         const std::vector<std::string>& sets) {
        Scenario sc = scenario_from_text(text, sets);
        ExperimentResult result = run_experiment(sc, jobs);
        return json_to_py(to_json(result, config_digest(text)));
      },
      py::arg("text"), py::arg("jobs") = 1,
      py::arg("sets") = std::vector<std::string>{},
      "Run every (config, seed) episode; returns rows and summaries.");

  m.def(
      "experiment_csv",
      [](const std::string& text, int jobs) {
        Scenario sc = scenario_from_text(text, {});
        return to_csv(run_experiment(sc, jobs));
      },
      py::arg("text"), py::arg("jobs") = 1,
      "Run the experiment and return the CSV bytes as a string.");

  m.def(
      "oracle",
      [](const std::string& check, int trials, std::uint64_t seed) {
        OracleReport r = run_oracle(check, trials, seed);
        json j;
        j["check"] = r.check;
        j["trials"] = r.trials;
        j["passed"] = r.passed;
        j["max_deviation"] = r.max_deviation;
        j["ok"] = r.ok();
        if (!r.failure.empty()) j["failure"] = r.failure;
        return json_to_py(j);
      },
      py::arg("check"), py::arg("trials") = 100, py::arg("seed") = 1,
      "Brute-force equivalence check: one of mra/asrt/qoe/cacat.");

  m.def("config_digest", &config_digest, py::arg("bytes"),
        "FNV-1a digest of the scenario bytes.");
}
