#pragma once

// Per-task local-vs-edge offloading under a weighted latency/energy cost,
// with joint bandwidth allocation across the offloaded set.

#include <vector>

namespace agtrack {

struct VideoTask {
  double data_bits = 0.0;
  double cycles = 0.0;
  int origin_camera = -1;
  double release_time = 0.0;
};

struct TerminalProfile {
  double f_local = 1.0;   // cycles/s
  double kappa = 0.0;     // switched-capacitance coefficient
  double p_tx = 0.0;      // transmit power, watts
};

struct EdgeServerProfile {
  double f_edge = 1.0;  // cycles/s
};

struct QoeWeights {
  double latency = 1.0;  // 1/s
  double energy = 0.0;   // 1/J
};

enum class OffloadSide { Local, Edge };

struct OffloadDecision {
  std::vector<OffloadSide> sides;  // per task
  std::vector<double> rates;       // bits/s, 0 for local tasks
  double total_cost = 0.0;
};

// LOCAL: T = cycles/f_l, E = kappa*f_l^2*cycles.
// EDGE:  T = data/rate + cycles/f_e, E = p_tx*data/rate.
// Throws on EDGE with rate <= 0 (unless the task carries zero data).
double task_cost(const VideoTask& task, OffloadSide side,
                 const TerminalProfile& terminal, const EdgeServerProfile& server,
                 double rate, const QoeWeights& w);

// Completion latency alone (the T term of task_cost).
double task_latency(const VideoTask& task, OffloadSide side,
                    const TerminalProfile& terminal,
                    const EdgeServerProfile& server, double rate);

// Side with the strictly smaller cost; ties go local.
OffloadSide decide(const VideoTask& task, const TerminalProfile& terminal,
                   const EdgeServerProfile& server, double rate,
                   const QoeWeights& w);

// Exhaustive over offload subsets for n <= 10 with bandwidth split
// proportionally to data inside a subset; best-response flips beyond that.
OffloadDecision joint_allocate(const std::vector<VideoTask>& tasks,
                               const std::vector<TerminalProfile>& terminals,
                               const EdgeServerProfile& server,
                               double total_bandwidth, const QoeWeights& w);

}  // namespace agtrack
