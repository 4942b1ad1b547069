#include "agtrack/world.hpp"

#include <algorithm>
#include <queue>

namespace agtrack {

void RoadGraph::validate() {
  if (nodes.empty()) throw std::invalid_argument("road graph has no nodes");
  adjacency.assign(nodes.size(), {});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    if (a < 0 || b < 0 || a >= static_cast<int>(nodes.size()) ||
        b >= static_cast<int>(nodes.size())) {
      throw std::invalid_argument("road edge references missing node");
    }
    if (edge_length(static_cast<int>(e)) <= 0.0) {
      throw std::invalid_argument("road edge has zero length");
    }
    adjacency[a].push_back(static_cast<int>(e));
    adjacency[b].push_back(static_cast<int>(e));
  }
  // connectivity check over nodes with at least one edge
  std::vector<bool> seen(nodes.size(), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    int n = q.front();
    q.pop();
    for (int e : adjacency[n]) {
      int other = edges[e].first == n ? edges[e].second : edges[e].first;
      if (!seen[other]) {
        seen[other] = true;
        q.push(other);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("road graph is not connected");
  }
}

Vec2 TargetState::position(const RoadGraph& g) const {
  auto [a, b] = g.edges[edge];
  if (!forward) std::swap(a, b);
  double len = g.edge_length(edge);
  double t = len > 0 ? progress / len : 0.0;
  return g.nodes[a] + t * (g.nodes[b] - g.nodes[a]);
}

void step_target(TargetState& state, const RoadGraph& graph, double dt,
                 std::mt19937_64& rng) {
  if (dt <= 0) throw std::invalid_argument("step_target: dt must be positive");
  double remaining = state.speed * dt;
  while (remaining > 0) {
    double len = graph.edge_length(state.edge);
    double to_end = len - state.progress;
    if (remaining < to_end) {
      state.progress += remaining;
      return;
    }
    remaining -= to_end;
    // arrived at a node; pick the next edge
    auto [a, b] = graph.edges[state.edge];
    int node = state.forward ? b : a;
    const auto& incident = graph.adjacency[node];
    std::vector<int> choices;
    for (int e : incident) {
      if (e != state.edge) choices.push_back(e);
    }
    int next;
    if (choices.empty()) {
      next = state.edge;  // dead end: turn back
    } else if (choices.size() == 1) {
      next = choices[0];
    } else {
      next = choices[rng() % choices.size()];
    }
    state.edge = next;
    state.forward = graph.edges[next].first == node;
    state.progress = 0.0;
  }
}

void step_uav(UavState& state, Vec2 goal, double dt) {
  if (dt <= 0) throw std::invalid_argument("step_uav: dt must be positive");
  if (state.grounded) return;
  double fly = std::min(dt, state.battery);
  double d = distance(state.position, goal);
  double step = std::min(state.max_speed * fly, d);
  if (d > 0) {
    state.position = state.position + (step / d) * (goal - state.position);
  }
  state.battery -= fly;
  if (state.battery <= 0.0) {
    state.battery = 0.0;
    state.grounded = true;
  }
}

namespace {

// Segment vs open-box intersection via the slab method. Intervals are kept
// open so boundary tangency never counts as a hit.
bool segment_hits_interior(Vec2 a, Vec2 b, const Obstacle& o) {
  double lo = 0.0, hi = 1.0;
  double mins[2] = {o.x, o.y};
  double maxs[2] = {o.x + o.w, o.y + o.h};
  double p[2] = {a.x, a.y};
  double d[2] = {b.x - a.x, b.y - a.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (p[axis] <= mins[axis] || p[axis] >= maxs[axis]) return false;
    } else {
      double t0 = (mins[axis] - p[axis]) / d[axis];
      double t1 = (maxs[axis] - p[axis]) / d[axis];
      if (t0 > t1) std::swap(t0, t1);
      lo = std::max(lo, t0);
      hi = std::min(hi, t1);
    }
  }
  return lo < hi;
}

}  // namespace

bool line_of_sight(Vec2 a, Vec2 b, std::span<const Obstacle> obstacles) {
  for (const Obstacle& o : obstacles) {
    if (segment_hits_interior(a, b, o)) return false;
  }
  return true;
}

bool camera_covers(const CameraState& cam, Vec2 p,
                   std::span<const Obstacle> obstacles) {
  if (distance(cam.position, p) > cam.radius) return false;
  return line_of_sight(cam.position, p, obstacles);
}

}  // namespace agtrack
