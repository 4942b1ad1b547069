#pragma once

// Camera activation planning for relay tracking: the ring region bounding
// where the target can be, candidate selection, key-camera choice, and
// LAN flooding of the activation.

#include <map>
#include <vector>

#include "agtrack/netlinks.hpp"
#include "agtrack/world.hpp"

namespace agtrack {

struct LanEdge {
  int a = 0;
  int b = 0;
  double delay = 0.0;  // seconds, > 0
};

struct CameraGraph {
  std::vector<CameraState> cameras;
  std::vector<LanEdge> edges;  // undirected, over camera ids

  int index_of(int camera_id) const;
};

struct RingRegion {
  Vec2 center;
  double r_inner = 0.0;
  double r_outer = 0.0;
};

struct ActivationPlan {
  std::vector<int> keys;                    // camera ids contacted over LTE
  std::map<int, double> activation_time;    // candidate id -> seconds
  double total = 0.0;                       // max over candidates
};

RingRegion ring_region(Vec2 last_seen, double v_target_max, double v_target_min,
                       double elapsed_s, double d_request_s, double d_response_s);

// Ids of cameras whose coverage disk intersects the closed annulus.
std::vector<int> candidate_cameras(const CameraGraph& graph,
                                   const RingRegion& region);

// Key-set selection minimizing total activation time: per-camera time is the
// best key's LTE latency plus the LAN shortest-path delay. Exhaustive over
// subsets for <= 12 candidates, greedy otherwise; ties prefer fewer keys,
// then the lexicographically smallest id set. Throws if a candidate is
// unreachable from every candidate over the LAN.
ActivationPlan plan_activation(const CameraGraph& graph,
                               const std::vector<int>& candidates,
                               Vec2 uav_pos, int k_max, const LinkSet& links,
                               double activation_bits);

// Multi-source shortest path over LAN edge delays; sources carry their
// UAV-link offsets. Returns times for every reachable camera id.
std::map<int, double> propagate_activation(
    const std::map<int, double>& key_offsets, const CameraGraph& graph);

}  // namespace agtrack
