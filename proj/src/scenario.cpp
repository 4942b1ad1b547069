#include "agtrack/scenario.hpp"

#include <fstream>
#include <sstream>

namespace agtrack {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& parent,
                    const std::string& key) {
  if (!j.is_object() || !j.contains(key)) {
    std::string path = parent.empty() ? key : parent + "." + key;
    throw ScenarioError(path, "missing required section");
  }
  return j.at(key);
}

double num(const json& j, const std::string& parent, const std::string& key,
           std::optional<double> fallback = std::nullopt) {
  if (!j.is_object() || !j.contains(key)) {
    if (fallback) return *fallback;
    throw ScenarioError(parent.empty() ? key : parent + "." + key,
                        "missing required number");
  }
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw ScenarioError(parent + "." + key, "expected a number");
  }
  return v.get<double>();
}

int integer(const json& j, const std::string& parent, const std::string& key,
            std::optional<int> fallback = std::nullopt) {
  double d = num(j, parent, key,
                 fallback ? std::optional<double>(*fallback) : std::nullopt);
  return static_cast<int>(d);
}

bool boolean(const json& j, const std::string& parent, const std::string& key,
             bool fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) {
    throw ScenarioError(parent + "." + key, "expected a boolean");
  }
  return j.at(key).get<bool>();
}

Vec2 vec2(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ScenarioError(path, "expected [x, y]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

LinkParams link_params(const json& links, const std::string& key) {
  const json& j = require(links, "links", key);
  std::string path = "links." + key;
  LinkParams p;
  p.rate = num(j, path, "rate");
  p.propagation = num(j, path, "propagation", 0.0);
  p.overhead = num(j, path, "overhead", 0.0);
  if (p.rate <= 0) throw ScenarioError(path + ".rate", "must be positive");
  if (p.propagation < 0) throw ScenarioError(path + ".propagation", "must be nonnegative");
  if (p.overhead < 0) throw ScenarioError(path + ".overhead", "must be nonnegative");
  return p;
}

MraMode parse_mra_mode(const std::string& s, const std::string& path) {
  if (s == "off") return MraMode::Off;
  if (s == "mra") return MraMode::Mra;
  if (s == "ras") return MraMode::Ras;
  if (s == "default") return MraMode::Default;
  throw ScenarioError(path, "expected one of off/mra/ras/default");
}

Case3Route parse_case3(const std::string& s, const std::string& path) {
  if (s == "off") return Case3Route::Off;
  if (s == "qoe") return Case3Route::Qoe;
  if (s == "cacat") return Case3Route::Cacat;
  throw ScenarioError(path, "expected one of off/qoe/cacat");
}

}  // namespace

double Scenario::effective_penalty() const {
  if (params.penalty > 0) return params.penalty;
  double max_cost = 0.0;
  for (const auto& n : cacat_nodes) max_cost = std::max(max_cost, n.cost);
  return 10.0 * std::max(max_cost, 1.0);
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) throw ScenarioError("", "scenario must be a JSON object");
  Scenario sc;
  sc.name = j.value("name", std::string("scenario"));

  // ---- world ----
  const json& world = require(j, "", "world");
  const json& roads = require(world, "world", "roads");
  const json& road_nodes = require(roads, "world.roads", "nodes");
  const json& road_edges = require(roads, "world.roads", "edges");
  for (std::size_t i = 0; i < road_nodes.size(); ++i) {
    sc.roads.nodes.push_back(
        vec2(road_nodes[i], "world.roads.nodes[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < road_edges.size(); ++i) {
    const json& e = road_edges[i];
    std::string path = "world.roads.edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2) throw ScenarioError(path, "expected [a, b]");
    sc.roads.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  try {
    sc.roads.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("world.roads", e.what());
  }

  if (world.contains("obstacles")) {
    const json& obs = world.at("obstacles");
    for (std::size_t i = 0; i < obs.size(); ++i) {
      std::string path = "world.obstacles[" + std::to_string(i) + "]";
      Obstacle o;
      o.x = num(obs[i], path, "x");
      o.y = num(obs[i], path, "y");
      o.w = num(obs[i], path, "w");
      o.h = num(obs[i], path, "h");
      o.blocks_aerial = boolean(obs[i], path, "blocks_aerial", false);
      if (o.w <= 0 || o.h <= 0) throw ScenarioError(path, "width and height must be positive");
      sc.obstacles.push_back(o);
    }
  }

  const json& target = require(world, "world", "target");
  sc.target.start_edge = integer(target, "world.target", "start_edge", 0);
  sc.target.speed = num(target, "world.target", "speed");
  sc.target.v_min = num(target, "world.target", "v_min", 0.0);
  sc.target.v_max = num(target, "world.target", "v_max", sc.target.speed * 2);
  if (sc.target.start_edge < 0 ||
      sc.target.start_edge >= static_cast<int>(sc.roads.edges.size())) {
    throw ScenarioError("world.target.start_edge", "edge index out of range");
  }
  if (sc.target.speed <= 0) throw ScenarioError("world.target.speed", "must be positive");
  if (sc.target.v_min < 0 || sc.target.v_max < sc.target.v_min) {
    throw ScenarioError("world.target.v_max", "requires 0 <= v_min <= v_max");
  }

  const json& uav = require(world, "world", "uav");
  sc.uav.position = vec2(require(uav, "world.uav", "position"), "world.uav.position");
  sc.uav.max_speed = num(uav, "world.uav", "max_speed", 15.0);
  sc.uav.battery_s = num(uav, "world.uav", "battery_s", 1800.0);
  sc.uav.sense_radius = num(uav, "world.uav", "sense_radius", 100.0);
  if (sc.uav.max_speed <= 0) throw ScenarioError("world.uav.max_speed", "must be positive");
  if (sc.uav.battery_s <= 0 || sc.uav.battery_s > 1800.0) {
    throw ScenarioError("world.uav.battery_s", "must be in (0, 1800]");
  }

  if (world.contains("cameras")) {
    const json& cams = world.at("cameras");
    for (std::size_t i = 0; i < cams.size(); ++i) {
      std::string path = "world.cameras[" + std::to_string(i) + "]";
      CameraState cam;
      cam.id = integer(cams[i], path, "id");
      cam.position = vec2(require(cams[i], path, "position"), path + ".position");
      cam.radius = num(cams[i], path, "radius");
      if (cam.radius <= 0) throw ScenarioError(path + ".radius", "must be positive");
      for (const CameraState& prev : sc.cameras.cameras) {
        if (prev.id == cam.id) throw ScenarioError(path + ".id", "duplicate camera id");
      }
      sc.cameras.cameras.push_back(cam);
    }
  }
  if (world.contains("lan")) {
    const json& lan = world.at("lan");
    for (std::size_t i = 0; i < lan.size(); ++i) {
      std::string path = "world.lan[" + std::to_string(i) + "]";
      const json& e = lan[i];
      if (!e.is_array() || e.size() != 3) throw ScenarioError(path, "expected [a, b, delay]");
      LanEdge edge{e[0].get<int>(), e[1].get<int>(), e[2].get<double>()};
      if (edge.delay <= 0) throw ScenarioError(path, "delay must be positive");
      try {
        sc.cameras.index_of(edge.a);
        sc.cameras.index_of(edge.b);
      } catch (const std::invalid_argument& ex) {
        throw ScenarioError(path, ex.what());
      }
      sc.cameras.edges.push_back(edge);
    }
  }

  // ---- links ----
  const json& links = require(j, "", "links");
  sc.links.uav_lte = link_params(links, "uav_lte");
  sc.links.camera_lan = link_params(links, "camera_lan");
  sc.links.camera_wifi = link_params(links, "camera_wifi");
  if (links.contains("radio")) {
    const json& radio = links.at("radio");
    sc.links.radio.power[0] = num(radio, "links.radio", "uav_lte", 1.0);
    sc.links.radio.power[1] = num(radio, "links.radio", "camera_lan", 0.0);
    sc.links.radio.power[2] = num(radio, "links.radio", "camera_wifi", 0.0);
  } else {
    sc.links.radio.power = {1.0, 0.0, 0.0};
  }

  // ---- cluster ----
  if (j.contains("cluster")) {
    const json& cluster = j.at("cluster");
    if (cluster.contains("servers")) {
      const json& servers = cluster.at("servers");
      for (std::size_t i = 0; i < servers.size(); ++i) {
        std::string path = "cluster.servers[" + std::to_string(i) + "]";
        ServerProfile s;
        s.id = integer(servers[i], path, "id");
        s.position = vec2(require(servers[i], path, "position"), path + ".position");
        s.frequency = num(servers[i], path, "frequency");
        s.memory = num(servers[i], path, "memory");
        if (s.frequency <= 0) throw ScenarioError(path + ".frequency", "must be positive");
        if (s.memory < 0) throw ScenarioError(path + ".memory", "must be nonnegative");
        sc.servers.push_back(s);
      }
    }
    if (cluster.contains("dag")) {
      const json& dag = cluster.at("dag");
      const json& comps = require(dag, "cluster.dag", "components");
      for (std::size_t i = 0; i < comps.size(); ++i) {
        std::string path = "cluster.dag.components[" + std::to_string(i) + "]";
        DagComponent c;
        c.cycles = num(comps[i], path, "cycles");
        c.memory = num(comps[i], path, "memory", 0.0);
        sc.dag.components.push_back(c);
      }
      if (dag.contains("edges")) {
        const json& edges = dag.at("edges");
        for (std::size_t i = 0; i < edges.size(); ++i) {
          std::string path = "cluster.dag.edges[" + std::to_string(i) + "]";
          DagEdge e;
          e.from = integer(edges[i], path, "from");
          e.to = integer(edges[i], path, "to");
          e.bits = num(edges[i], path, "bits", 0.0);
          sc.dag.edges.push_back(e);
        }
      }
      sc.dag.uplink_bits = num(dag, "cluster.dag", "uplink_bits", 8e6);
      sc.dag.source = integer(dag, "cluster.dag", "source", 0);
      try {
        sc.dag.validate();
      } catch (const std::invalid_argument& e) {
        throw ScenarioError("cluster.dag", e.what());
      }
    }
    if (cluster.contains("edge_server")) {
      sc.edge_server.f_edge = num(cluster.at("edge_server"), "cluster.edge_server", "frequency");
      if (sc.edge_server.f_edge <= 0) {
        throw ScenarioError("cluster.edge_server.frequency", "must be positive");
      }
    }
    if (cluster.contains("terminal")) {
      const json& t = cluster.at("terminal");
      TerminalProfile tp;
      tp.f_local = num(t, "cluster.terminal", "f_local");
      tp.kappa = num(t, "cluster.terminal", "kappa", 0.0);
      tp.p_tx = num(t, "cluster.terminal", "p_tx", 0.0);
      if (tp.f_local <= 0) throw ScenarioError("cluster.terminal.f_local", "must be positive");
      sc.terminals.push_back(tp);
    }
    sc.bandwidth = num(cluster, "cluster", "bandwidth", 10e6);
    if (sc.bandwidth <= 0) throw ScenarioError("cluster.bandwidth", "must be positive");
    if (cluster.contains("weights")) {
      const json& w = cluster.at("weights");
      sc.weights.latency = num(w, "cluster.weights", "latency", 1.0);
      sc.weights.energy = num(w, "cluster.weights", "energy", 0.0);
      if (sc.weights.latency < 0 || sc.weights.energy < 0 ||
          (sc.weights.latency == 0 && sc.weights.energy == 0)) {
        throw ScenarioError("cluster.weights", "weights must be nonnegative and not both zero");
      }
    }
    if (cluster.contains("nodes")) {
      const json& nodes = cluster.at("nodes");
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string path = "cluster.nodes[" + std::to_string(i) + "]";
        EdgeNodeProfile n;
        n.id = integer(nodes[i], path, "id");
        n.capacity = integer(nodes[i], path, "capacity", 1);
        n.cost = num(nodes[i], path, "cost");
        n.persistence = num(nodes[i], path, "persistence", 1.0);
        n.initially_available = boolean(nodes[i], path, "available", true);
        if (n.capacity < 1) throw ScenarioError(path + ".capacity", "must be >= 1");
        if (n.cost < 0) throw ScenarioError(path + ".cost", "must be nonnegative");
        if (n.persistence < 0 || n.persistence > 1) {
          throw ScenarioError(path + ".persistence", "must be in [0, 1]");
        }
        sc.cacat_nodes.push_back(n);
      }
    }
  }

  // ---- strategies ----
  // defaults engage each strategy only when its resources are configured;
  // explicitly requesting one without them is still an error (checked below)
  bool has_placement = !sc.servers.empty() && !sc.dag.components.empty();
  StrategyToggles base;
  base.mra = has_placement ? MraMode::Mra : MraMode::Off;
  base.case3 = !sc.terminals.empty()
                   ? Case3Route::Qoe
                   : (!sc.cacat_nodes.empty() ? Case3Route::Cacat
                                              : Case3Route::Off);
  if (j.contains("strategies")) {
    const json& st = j.at("strategies");
    base.mra = parse_mra_mode(st.value("mra", has_placement ? "mra" : "off"),
                              "strategies.mra");
    base.asrt = boolean(st, "strategies", "asrt", true);
    base.case3 = parse_case3(
        st.value("case3", !sc.terminals.empty()
                              ? "qoe"
                              : (!sc.cacat_nodes.empty() ? "cacat" : "off")),
        "strategies.case3");
    sc.params.k_max = integer(st, "strategies", "k_max", 3);
    sc.params.activation_bits = num(st, "strategies", "activation_bits", 1e6);
    sc.params.tau_occ = num(st, "strategies", "tau_occ", 2.0);
    sc.params.tau_lost = num(st, "strategies", "tau_lost", 15.0);
    sc.params.p_detect = num(st, "strategies", "p_detect", 0.9);
    sc.params.case3_radius = num(st, "strategies", "case3_radius", 300.0);
    sc.params.recognition_bits = num(st, "strategies", "recognition_bits", 8e6);
    sc.params.recognition_cycles = num(st, "strategies", "recognition_cycles", 1e8);
    sc.params.frames_per_task = integer(st, "strategies", "frames_per_task", 8);
    sc.params.chunk = integer(st, "strategies", "chunk", 2);
    sc.params.max_rounds = integer(st, "strategies", "max_rounds", 4);
    sc.params.round_duration = num(st, "strategies", "round_duration", 0.5);
    sc.params.penalty = num(st, "strategies", "penalty", 0.0);
    sc.params.forecast_horizon = num(st, "strategies", "forecast_horizon", 10.0);
    sc.params.forecast_samples = integer(st, "strategies", "forecast_samples", 5);
    if (sc.params.tau_occ >= sc.params.tau_lost) {
      throw ScenarioError("strategies.tau_lost", "requires tau_occ < tau_lost");
    }
    if (sc.params.p_detect <= 0 || sc.params.p_detect > 1) {
      throw ScenarioError("strategies.p_detect", "must be in (0, 1]");
    }
    if (sc.params.k_max < 1) throw ScenarioError("strategies.k_max", "must be >= 1");

    if (st.contains("configs")) {
      const json& configs = st.at("configs");
      if (!configs.is_array() || configs.empty()) {
        throw ScenarioError("strategies.configs", "expected a nonempty array");
      }
      for (std::size_t i = 0; i < configs.size(); ++i) {
        std::string path = "strategies.configs[" + std::to_string(i) + "]";
        StrategyToggles t = base;
        t.name = configs[i].value("name", "config" + std::to_string(i));
        if (configs[i].contains("mra")) {
          t.mra = parse_mra_mode(configs[i].at("mra").get<std::string>(), path + ".mra");
        }
        t.asrt = boolean(configs[i], path, "asrt", base.asrt);
        if (configs[i].contains("case3")) {
          t.case3 = parse_case3(configs[i].at("case3").get<std::string>(), path + ".case3");
        }
        sc.configs.push_back(t);
      }
    }
  }
  if (sc.configs.empty()) sc.configs.push_back(base);

  // strategy/resource cross checks
  for (const StrategyToggles& t : sc.configs) {
    if (t.mra != MraMode::Off && (sc.servers.empty() || sc.dag.components.empty())) {
      throw ScenarioError("cluster.servers",
                          "mra placement enabled but no servers or dag configured");
    }
    if (t.case3 == Case3Route::Qoe && sc.terminals.empty()) {
      throw ScenarioError("cluster.terminal", "qoe routing enabled but no terminal profile");
    }
    if (t.case3 == Case3Route::Cacat && sc.cacat_nodes.empty()) {
      throw ScenarioError("cluster.nodes", "cacat routing enabled but no edge nodes");
    }
  }

  // ---- episode ----
  const json& ep = require(j, "", "episode");
  sc.episode.duration = num(ep, "episode", "duration");
  sc.episode.tick = num(ep, "episode", "tick", 0.1);
  sc.episode.recognition_interval = num(ep, "episode", "recognition_interval", 1.0);
  sc.episode.camera_interval = num(ep, "episode", "camera_interval", 1.0);
  if (sc.episode.duration < 0) throw ScenarioError("episode.duration", "must be nonnegative");
  if (sc.episode.tick <= 0) throw ScenarioError("episode.tick", "must be positive");
  if (ep.contains("seeds")) {
    const json& seeds = ep.at("seeds");
    if (!seeds.is_array() || seeds.empty()) {
      throw ScenarioError("episode.seeds", "expected a nonempty array");
    }
    for (const json& s : seeds) {
      if (!s.is_number_unsigned() && !s.is_number_integer()) {
        throw ScenarioError("episode.seeds", "seeds must be integers");
      }
      sc.episode.seeds.push_back(s.get<std::uint64_t>());
    }
  } else {
    for (std::uint64_t s = 0; s < 50; ++s) sc.episode.seeds.push_back(s);
  }

  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(j);
}

void apply_override(nlohmann::json& doc, const std::string& dotted_path,
                    const std::string& value) {
  json* node = &doc;
  std::istringstream path(dotted_path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(path, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ScenarioError(dotted_path, "empty override path");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object() || !node->contains(parts[i])) {
      throw ScenarioError(dotted_path, "override path does not exist");
    }
    node = &node->at(parts[i]);
  }
  if (!node->is_object() || !node->contains(parts.back())) {
    throw ScenarioError(dotted_path, "override path does not exist");
  }
  json& leaf = node->at(parts.back());
  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // treat as string
  if (leaf.is_number() && !parsed.is_number()) {
    throw ScenarioError(dotted_path, "expected a numeric value");
  }
  leaf = parsed;
}

}  // namespace agtrack
