#include "agtrack/asrt.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace agtrack {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dijkstra over LAN delays from one camera index; returns per-index delay.
std::vector<double> lan_shortest(const CameraGraph& g,
                                 const std::vector<std::vector<std::pair<int, double>>>& adj,
                                 int start_index) {
  std::vector<double> dist(g.cameras.size(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[start_index] = 0.0;
  heap.emplace(0.0, start_index);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

std::vector<std::vector<std::pair<int, double>>> build_adjacency(
    const CameraGraph& g) {
  std::vector<std::vector<std::pair<int, double>>> adj(g.cameras.size());
  for (const LanEdge& e : g.edges) {
    if (e.delay <= 0) throw std::invalid_argument("LAN edge delay must be positive");
    int ia = g.index_of(e.a);
    int ib = g.index_of(e.b);
    adj[ia].emplace_back(ib, e.delay);
    adj[ib].emplace_back(ia, e.delay);
  }
  return adj;
}

}  // namespace

int CameraGraph::index_of(int camera_id) const {
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    if (cameras[i].id == camera_id) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown camera id " + std::to_string(camera_id));
}

RingRegion ring_region(Vec2 last_seen, double v_target_max, double v_target_min,
                       double elapsed_s, double d_request_s, double d_response_s) {
  if (v_target_min < 0 || v_target_max < v_target_min) {
    throw std::invalid_argument("invalid target speed bounds");
  }
  if (elapsed_s < 0 || d_request_s < 0 || d_response_s < 0) {
    throw std::invalid_argument("negative delay");
  }
  RingRegion r;
  r.center = last_seen;
  r.r_inner = v_target_min * elapsed_s;
  r.r_outer = v_target_max * (elapsed_s + d_request_s + d_response_s);
  r.r_inner = std::min(r.r_inner, r.r_outer);
  return r;
}

std::vector<int> candidate_cameras(const CameraGraph& graph,
                                   const RingRegion& region) {
  std::vector<int> out;
  for (const CameraState& cam : graph.cameras) {
    double d = distance(cam.position, region.center);
    if (d - cam.radius <= region.r_outer && d + cam.radius >= region.r_inner) {
      out.push_back(cam.id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ActivationPlan plan_activation(const CameraGraph& graph,
                               const std::vector<int>& candidates,
                               Vec2 uav_pos, int k_max, const LinkSet& links,
                               double activation_bits) {
  if (candidates.empty()) throw std::invalid_argument("no candidate cameras");
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  auto adj = build_adjacency(graph);
  int nc = static_cast<int>(candidates.size());

  std::vector<int> sorted_ids = candidates;
  std::sort(sorted_ids.begin(), sorted_ids.end());

  // Per candidate: LTE latency if used as a key, and LAN distances to all
  // other candidates.
  std::vector<double> lte(nc);
  std::vector<std::vector<double>> sp(nc, std::vector<double>(nc));
  for (int i = 0; i < nc; ++i) {
    int idx = graph.index_of(sorted_ids[i]);
    lte[i] = link_latency(links, LinkKind::UavLte, activation_bits,
                          distance(uav_pos, graph.cameras[idx].position));
    auto dist = lan_shortest(graph, adj, idx);
    for (int j = 0; j < nc; ++j) {
      sp[i][j] = dist[graph.index_of(sorted_ids[j])];
    }
  }

  auto eval = [&](const std::vector<int>& key_pos,
                  std::vector<double>* times) -> double {
    double total = 0.0;
    for (int j = 0; j < nc; ++j) {
      double best = kInf;
      for (int k : key_pos) best = std::min(best, lte[k] + sp[k][j]);
      if (times) (*times)[j] = best;
      total = std::max(total, best);
    }
    return total;
  };

  std::vector<int> best_keys;
  double best_total = kInf;
  auto consider = [&](const std::vector<int>& key_pos) {
    double total = eval(key_pos, nullptr);
    if (total < best_total ||
        (total == best_total &&
         (key_pos.size() < best_keys.size() ||
          (key_pos.size() == best_keys.size() && key_pos < best_keys)))) {
      best_total = total;
      best_keys = key_pos;
    }
  };

  if (nc <= 12) {
    for (unsigned mask = 1; mask < (1u << nc); ++mask) {
      if (static_cast<int>(__builtin_popcount(mask)) > k_max) continue;
      std::vector<int> key_pos;
      for (int i = 0; i < nc; ++i) {
        if (mask & (1u << i)) key_pos.push_back(i);
      }
      consider(key_pos);
    }
  } else {
    // greedy: repeatedly add the key that reduces the total most
    std::vector<int> chosen;
    double current = kInf;
    while (static_cast<int>(chosen.size()) < k_max) {
      int best_add = -1;
      double best_after = current;
      for (int i = 0; i < nc; ++i) {
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
        std::vector<int> trial = chosen;
        trial.push_back(i);
        std::sort(trial.begin(), trial.end());
        double total = eval(trial, nullptr);
        if (total < best_after) {
          best_after = total;
          best_add = i;
        }
      }
      if (best_add < 0) break;
      chosen.push_back(best_add);
      std::sort(chosen.begin(), chosen.end());
      current = best_after;
    }
    if (!chosen.empty()) consider(chosen);
  }

  if (best_keys.empty() || best_total == kInf) {
    throw std::invalid_argument(
        "coverage error: some candidate is unreachable from every feasible key set");
  }

  ActivationPlan plan;
  std::vector<double> times(nc);
  plan.total = eval(best_keys, &times);
  for (int k : best_keys) plan.keys.push_back(sorted_ids[k]);
  for (int j = 0; j < nc; ++j) plan.activation_time[sorted_ids[j]] = times[j];
  return plan;
}

std::map<int, double> propagate_activation(
    const std::map<int, double>& key_offsets, const CameraGraph& graph) {
  if (key_offsets.empty()) throw std::invalid_argument("no activation sources");
  auto adj = build_adjacency(graph);
  std::vector<double> dist(graph.cameras.size(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (const auto& [id, offset] : key_offsets) {
    int idx = graph.index_of(id);
    if (offset < dist[idx]) {
      dist[idx] = offset;
      heap.emplace(offset, idx);
    }
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
    }
  }
  std::map<int, double> out;
  for (std::size_t i = 0; i < graph.cameras.size(); ++i) {
    if (dist[i] < kInf) out[graph.cameras[i].id] = dist[i];
  }
  return out;
}

}  // namespace agtrack
