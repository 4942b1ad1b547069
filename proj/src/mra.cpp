#include "agtrack/mra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace agtrack {

std::vector<int> StreamDag::validate() const {
  int n = static_cast<int>(components.size());
  if (n == 0) throw std::invalid_argument("dag has no components");
  if (source < 0 || source >= n) throw std::invalid_argument("dag source out of range");
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (const DagEdge& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      throw std::invalid_argument("dag edge references missing component");
    }
    out[e.from].push_back(e.to);
    ++indeg[e.to];
  }
  std::vector<int> order;
  std::vector<int> ready;
  for (int i = 0; i < n; ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    int c = ready.back();
    ready.pop_back();
    order.push_back(c);
    for (int t : out[c]) {
      if (--indeg[t] == 0) ready.push_back(t);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("stream dag contains a cycle");
  }
  // reachability from the source
  std::vector<bool> reach(n, false);
  std::vector<int> stack{source};
  reach[source] = true;
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int t : out[c]) {
      if (!reach[t]) {
        reach[t] = true;
        stack.push_back(t);
      }
    }
  }
  if (std::find(reach.begin(), reach.end(), false) != reach.end()) {
    throw std::invalid_argument("dag component unreachable from source");
  }
  return order;
}

UavForecast UavForecast::straight_line(Vec2 pos, Vec2 velocity,
                                       double horizon_s, int samples) {
  UavForecast f;
  if (samples < 1) samples = 1;
  for (int i = 0; i < samples; ++i) {
    double t = samples == 1 ? 0.0 : horizon_s * i / (samples - 1);
    f.points.emplace_back(t, pos + t * velocity);
  }
  return f;
}

bool placement_feasible(const StreamDag& dag, const Placement& placement,
                        const std::vector<ServerProfile>& servers) {
  if (placement.size() != dag.components.size()) return false;
  std::vector<double> used(servers.size(), 0.0);
  for (std::size_t c = 0; c < placement.size(); ++c) {
    int s = placement[c];
    if (s < 0 || s >= static_cast<int>(servers.size())) return false;
    used[s] += dag.components[c].memory;
  }
  for (std::size_t s = 0; s < servers.size(); ++s) {
    if (used[s] > servers[s].memory) return false;
  }
  return true;
}

double estimate_tuple_time(const StreamDag& dag, const Placement& placement,
                           const std::vector<ServerProfile>& servers,
                           Vec2 uav_pos, const LinkSet& links) {
  if (!placement_feasible(dag, placement, servers)) {
    throw std::invalid_argument("placement violates server memory constraint");
  }
  std::vector<int> order = dag.validate();
  int n = static_cast<int>(dag.components.size());
  std::vector<double> finish(n, 0.0);
  for (int c : order) {
    finish[c] = dag.components[c].cycles / servers[placement[c]].frequency;
  }
  // longest path in topological order
  for (int c : order) {
    for (const DagEdge& e : dag.edges) {
      if (e.from != c) continue;
      double transfer = 0.0;
      if (placement[e.from] != placement[e.to]) {
        transfer = link_latency(
            links, LinkKind::CameraWifi, e.bits,
            distance(servers[placement[e.from]].position,
                     servers[placement[e.to]].position));
      }
      double candidate = finish[e.from] + transfer +
                         dag.components[e.to].cycles /
                             servers[placement[e.to]].frequency;
      finish[e.to] = std::max(finish[e.to], candidate);
    }
  }
  double uplink = link_latency(links, LinkKind::UavLte, dag.uplink_bits,
                               distance(uav_pos, servers[placement[dag.source]].position));
  return uplink + *std::max_element(finish.begin(), finish.end());
}

double mean_forecast_cost(const StreamDag& dag, const Placement& placement,
                          const std::vector<ServerProfile>& servers,
                          const UavForecast& forecast, const LinkSet& links) {
  if (forecast.points.empty()) {
    throw std::invalid_argument("forecast has no sample points");
  }
  double sum = 0.0;
  for (const auto& [t, pos] : forecast.points) {
    sum += estimate_tuple_time(dag, placement, servers, pos, links);
  }
  return sum / forecast.points.size();
}

namespace {

std::vector<int> servers_by_id(const std::vector<ServerProfile>& servers) {
  std::vector<int> idx(servers.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return servers[a].id < servers[b].id;
  });
  return idx;
}

// Mean cost of a partial placement: only placed components and the edges
// among them count; the uplink counts once the source is placed.
double partial_cost(const StreamDag& dag, const std::vector<int>& placed,
                    const Placement& placement,
                    const std::vector<ServerProfile>& servers,
                    const UavForecast& forecast, const LinkSet& links) {
  StreamDag sub;
  std::vector<int> remap(dag.components.size(), -1);
  for (int c : placed) {
    remap[c] = static_cast<int>(sub.components.size());
    sub.components.push_back(dag.components[c]);
  }
  for (const DagEdge& e : dag.edges) {
    if (remap[e.from] >= 0 && remap[e.to] >= 0) {
      sub.edges.push_back({remap[e.from], remap[e.to], e.bits});
    }
  }
  if (remap[dag.source] < 0) return 0.0;  // source not placed yet
  sub.source = remap[dag.source];
  sub.uplink_bits = dag.uplink_bits;
  Placement subplacement;
  for (int c : placed) subplacement.push_back(placement[c]);
  return mean_forecast_cost(sub, subplacement, servers, forecast, links);
}

Placement place_optimizing(const StreamDag& dag,
                           const std::vector<ServerProfile>& servers,
                           const UavForecast& forecast, const LinkSet& links) {
  std::vector<int> order = dag.validate();
  if (servers.empty()) throw std::invalid_argument("no servers available");
  int n = static_cast<int>(dag.components.size());
  int m = static_cast<int>(servers.size());
  std::vector<int> by_id = servers_by_id(servers);

  double combos = std::pow(static_cast<double>(m), n);
  if (combos <= 1e4) {
    Placement best;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> digits(n, 0);
    // enumerate in id order so earlier hits carry the smaller id sequence
    while (true) {
      Placement candidate(n);
      for (int c = 0; c < n; ++c) candidate[c] = by_id[digits[c]];
      if (placement_feasible(dag, candidate, servers)) {
        double cost = mean_forecast_cost(dag, candidate, servers, forecast, links);
        if (cost < best_cost) {
          best_cost = cost;
          best = candidate;
        }
      }
      int i = n - 1;
      while (i >= 0 && digits[i] == m - 1) {
        digits[i] = 0;
        --i;
      }
      if (i < 0) break;
      ++digits[i];
    }
    if (best.empty()) throw std::invalid_argument("no feasible placement exists");
    return best;
  }

  // greedy: topological order, each component on the server minimizing the
  // incremental mean cost
  Placement placement(n, -1);
  std::vector<double> used(servers.size(), 0.0);
  std::vector<int> placed;
  for (int c : order) {
    int best_server = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int s : by_id) {
      if (used[s] + dag.components[c].memory > servers[s].memory) continue;
      placement[c] = s;
      placed.push_back(c);
      double cost = partial_cost(dag, placed, placement, servers, forecast, links);
      placed.pop_back();
      if (cost < best_cost) {
        best_cost = cost;
        best_server = s;
      }
    }
    placement[c] = best_server;
    if (best_server < 0) throw std::invalid_argument("no feasible placement exists");
    used[best_server] += dag.components[c].memory;
    placed.push_back(c);
  }
  return placement;
}

}  // namespace

Placement mra_place(const StreamDag& dag,
                    const std::vector<ServerProfile>& servers,
                    const UavForecast& forecast, const LinkSet& links) {
  return place_optimizing(dag, servers, forecast, links);
}

Placement baseline_place(PlacementBaseline kind, const StreamDag& dag,
                         const std::vector<ServerProfile>& servers,
                         Vec2 uav_pos, const LinkSet& links) {
  if (servers.empty()) throw std::invalid_argument("no servers available");
  if (kind == PlacementBaseline::Ras) {
    UavForecast here;
    here.points.emplace_back(0.0, uav_pos);
    return place_optimizing(dag, servers, here, links);
  }
  // DEFAULT: round-robin over servers in id order, skipping full servers
  dag.validate();
  std::vector<int> by_id = servers_by_id(servers);
  int m = static_cast<int>(servers.size());
  std::vector<double> used(servers.size(), 0.0);
  Placement placement(dag.components.size(), -1);
  int cursor = 0;
  for (std::size_t c = 0; c < dag.components.size(); ++c) {
    int chosen = -1;
    for (int probe = 0; probe < m; ++probe) {
      int s = by_id[(cursor + probe) % m];
      if (used[s] + dag.components[c].memory <= servers[s].memory) {
        chosen = s;
        cursor = (cursor + probe + 1) % m;
        break;
      }
    }
    if (chosen < 0) throw std::invalid_argument("no feasible placement exists");
    placement[c] = chosen;
    used[chosen] += dag.components[c].memory;
  }
  return placement;
}

}  // namespace agtrack
