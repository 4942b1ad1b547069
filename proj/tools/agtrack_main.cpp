// Command-line entry point: run / sweep / oracle / validate.
//
// Exit codes: 0 success, 1 oracle violation, 2 missing input file,
// 3 schema violation, 4 runtime failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "agtrack/experiment.hpp"
#include "agtrack/oracles.hpp"
#include "agtrack/scenario.hpp"
#include "agtrack/tracker.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOracleFail = 1;
constexpr int kExitMissingFile = 2;
constexpr int kExitSchema = 3;
constexpr int kExitRuntime = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_doc(const std::string& path) {
  if (!fs::exists(path)) {
    std::cerr << "error: scenario file not found: " << path << "\n";
    std::exit(kExitMissingFile);
  }
  json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) {
    std::cerr << "error: scenario: invalid JSON\n";
    std::exit(kExitSchema);
  }
  return doc;
}

void apply_sets(json& doc, const std::vector<std::string>& sets) {
  for (const std::string& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --set expects PATH=VALUE, got: " << s << "\n";
      std::exit(kExitSchema);
    }
    agtrack::apply_override(doc, s.substr(0, eq), s.substr(eq + 1));
  }
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("failed to write " + path.string());
}

std::string run_traces(const agtrack::Scenario& sc) {
  std::ostringstream out;
  for (const agtrack::StrategyToggles& t : sc.configs) {
    for (std::uint64_t seed : sc.episode.seeds) {
      auto result = agtrack::run_episode(sc, t, seed);
      for (const agtrack::TraceRecord& r : result.trace) {
        json j;
        j["config"] = t.name;
        j["seed"] = seed;
        j["time"] = r.time;
        j["seq"] = r.seq;
        j["kind"] = agtrack::to_string(r.kind);
        j["summary"] = r.summary;
        out << j.dump() << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"air-ground cooperative target tracking simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::vector<std::string> sets;
  bool trace = false;
  int jobs = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--set", sets, "dotted-path override PATH=VALUE");
    cmd->add_option("--jobs", jobs, "parallel episodes");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run all configured episodes");
  add_common(run_cmd);
  run_cmd->add_flag("--trace", trace, "also dump the event trace (NDJSON)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run once per parameter value");
  add_common(sweep_cmd);
  std::string param;
  std::vector<double> values;
  sweep_cmd->add_option("--param", param, "dotted path of a numeric field")->required();
  sweep_cmd->add_option("--values", values, "values to sweep")->delimiter(',');

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "brute-force strategy equivalence checks");
  std::string check;
  int trials = 100;
  std::uint64_t oracle_seed = 1;
  oracle_cmd->add_option("check", check, "one of mra/asrt/qoe/cacat")->required();
  oracle_cmd->add_option("--trials", trials, "instances to test");
  oracle_cmd->add_option("--seed", oracle_seed, "instance generator seed");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "validate a scenario file");
  validate_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
  validate_cmd->add_option("--set", sets, "dotted-path override PATH=VALUE");

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle_cmd->parsed()) {
      agtrack::OracleReport report = agtrack::run_oracle(check, trials, oracle_seed);
      std::cout << report.check << ": " << report.passed << "/" << report.trials
                << " instances match (max deviation " << report.max_deviation
                << ")\n";
      if (!report.ok()) {
        std::cerr << "oracle violation: " << report.failure << "\n";
        return kExitOracleFail;
      }
      return 0;
    }

    json doc = load_doc(scenario_path);
    try {
      apply_sets(doc, sets);
      agtrack::Scenario probe = agtrack::parse_scenario(doc);  // re-validate
      std::string digest = agtrack::config_digest(
          doc.dump() + "|" + agtrack::kToolVersion);

      if (validate_cmd->parsed()) {
        std::cout << "ok: " << probe.name << " (" << probe.configs.size()
                  << " configs, " << probe.episode.seeds.size() << " seeds, digest "
                  << digest << ")\n";
        return 0;
      }

      if (run_cmd->parsed()) {
        agtrack::ExperimentResult result = agtrack::run_experiment(probe, jobs);
        fs::path base = fs::path(out_dir);
        write_text(base / "metrics.csv", agtrack::to_csv(result));
        write_text(base / "metrics.json",
                   agtrack::to_json(result, digest).dump(2) + "\n");
        if (trace) write_text(base / "trace.ndjson", run_traces(probe));
        std::cout << "wrote " << (base / "metrics.csv").string() << " ("
                  << result.rows.size() << " episode rows, digest " << digest
                  << ")\n";
        return 0;
      }

      if (sweep_cmd->parsed()) {
        if (values.empty()) {
          std::cerr << "error: sweep requires a nonempty --values list\n";
          return kExitSchema;
        }
        agtrack::SweepResult result =
            agtrack::run_sweep(doc, param, values, jobs);
        fs::path base = fs::path(out_dir);
        write_text(base / "sweep.csv", agtrack::to_csv(result));
        std::cout << "wrote " << (base / "sweep.csv").string() << " ("
                  << values.size() << " values, digest " << digest << ")\n";
        return 0;
      }
    } catch (const agtrack::ScenarioError& e) {
      std::cerr << "error: schema violation: " << e.what() << "\n";
      return kExitSchema;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
