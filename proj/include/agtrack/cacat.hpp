#pragma once

// Cloudlet-assisted cooperative task assignment: split a video task into
// frame-range subtasks and assign them to volunteer edge nodes over multiple
// rounds. Node availability follows a per-round geometric persistence
// process; the online rules never see future draws, the offline optimum does.

#include <cstdint>
#include <random>
#include <vector>

namespace agtrack {

struct EdgeNodeProfile {
  int id = 0;
  int capacity = 1;          // subtasks per round
  double cost = 0.0;         // per subtask
  double persistence = 1.0;  // P(stays available for the next round)
  bool initially_available = true;
};

struct SubtaskBatch {
  int parent_task = 0;
  std::vector<std::pair<int, int>> frame_ranges;  // [begin, end) per subtask

  int count() const { return static_cast<int>(frame_ranges.size()); }
};

SubtaskBatch split_task(int parent_task, int frames, int chunk);

// stays[n][r] (r in [0, max_rounds)): node n survives round r+1. A node is
// present in round 1 iff initially available, and in round r+1 iff it was
// present in round r and stayed. Work assigned in a round completes iff the
// node stays through that round's end.
struct AvailabilityRealization {
  std::vector<std::vector<bool>> stays;
};

AvailabilityRealization realize_availability(
    const std::vector<EdgeNodeProfile>& nodes, int max_rounds,
    std::mt19937_64& rng);

struct AssignmentSchedule {
  struct Entry {
    int round = 0;    // 1-based
    int subtask = 0;
    int node = 0;     // index into the node list
    bool completed = false;
  };
  std::vector<Entry> entries;
  std::vector<int> completion_round;  // 0 = never completed
  double total_cost = 0.0;
  bool complete = false;
};

enum class AssignmentPolicy {
  PaOpt,            // rank by cost / persistence
  Random,           // uniform among available nodes with spare capacity
  GreedyNoPredict,  // rank by raw cost
};

AssignmentSchedule assign_online(AssignmentPolicy policy,
                                 const SubtaskBatch& batch,
                                 const std::vector<EdgeNodeProfile>& nodes,
                                 int max_rounds,
                                 const AvailabilityRealization& realization,
                                 double penalty, std::mt19937_64& rng);

// Convenience wrappers drawing the realization from the substream.
AssignmentSchedule pa_opt_assign(const SubtaskBatch& batch,
                                 const std::vector<EdgeNodeProfile>& nodes,
                                 int max_rounds, double penalty,
                                 std::mt19937_64& rng);

// Exact minimum total cost with full knowledge of the realization. Because
// subtasks are interchangeable, the optimum takes the cheapest usable
// node-round slots (penalty for any remainder).
double offline_opt(const SubtaskBatch& batch,
                   const std::vector<EdgeNodeProfile>& nodes, int max_rounds,
                   const AvailabilityRealization& realization, double penalty);

// online / offline; throws if offline_cost is not positive.
double competition_ratio(double online_cost, double offline_cost);

}  // namespace agtrack
