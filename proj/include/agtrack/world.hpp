#pragma once

// City geometry, entity state, mobility, battery, and line-of-sight.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace agtrack {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Axis-aligned rectangle. blocks_aerial marks obstacles that also occlude
// the UAV's view (tunnels, garages); ground cameras are occluded by all.
struct Obstacle {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  bool blocks_aerial = false;
};

struct RoadGraph {
  std::vector<Vec2> nodes;
  std::vector<std::pair<int, int>> edges;

  // Built by validate(); incident edge indices per node.
  std::vector<std::vector<int>> adjacency;

  double edge_length(int e) const {
    return distance(nodes[edges[e].first], nodes[edges[e].second]);
  }
  // Throws std::invalid_argument if disconnected or degenerate.
  void validate();
};

struct TargetState {
  int edge = 0;        // index into graph.edges
  bool forward = true; // true: moving edges[e].first -> edges[e].second
  double progress = 0; // meters along the travel direction
  double speed = 0;    // m/s

  Vec2 position(const RoadGraph& g) const;
};

struct UavState {
  Vec2 position;
  double max_speed = 10.0;    // m/s
  double battery = 1800.0;    // remaining flight seconds
  double battery_initial = 1800.0;
  bool grounded = false;
};

struct CameraState {
  int id = 0;
  Vec2 position;
  double radius = 0.0;  // coverage radius, meters
  bool activated = false;
  std::optional<double> activation_time;
};

// Advances the target speed*dt along its route; at a node the next edge is
// drawn uniformly from incident edges excluding the arrival edge unless it
// is the only option.
void step_target(TargetState& state, const RoadGraph& graph, double dt,
                 std::mt19937_64& rng);

// Straight-line motion toward goal clamped to max_speed*dt; battery drains
// by flight time and hitting zero grounds the UAV in place.
void step_uav(UavState& state, Vec2 goal, double dt);

// True iff segment a-b intersects no obstacle interior (boundary tangency
// does not block).
bool line_of_sight(Vec2 a, Vec2 b, std::span<const Obstacle> obstacles);

bool camera_covers(const CameraState& cam, Vec2 p,
                   std::span<const Obstacle> obstacles);

}  // namespace agtrack
