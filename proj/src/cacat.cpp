#include "agtrack/cacat.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace agtrack {

SubtaskBatch split_task(int parent_task, int frames, int chunk) {
  if (frames < 1) throw std::invalid_argument("frames must be at least 1");
  if (chunk < 1) throw std::invalid_argument("chunk must be at least 1");
  SubtaskBatch batch;
  batch.parent_task = parent_task;
  for (int begin = 0; begin < frames; begin += chunk) {
    batch.frame_ranges.emplace_back(begin, std::min(begin + chunk, frames));
  }
  return batch;
}

AvailabilityRealization realize_availability(
    const std::vector<EdgeNodeProfile>& nodes, int max_rounds,
    std::mt19937_64& rng) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  AvailabilityRealization real;
  real.stays.assign(nodes.size(), std::vector<bool>(max_rounds, false));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    for (int r = 0; r < max_rounds; ++r) {
      real.stays[n][r] = uni(rng) < nodes[n].persistence;
    }
  }
  return real;
}

namespace {

std::vector<std::vector<bool>> presence_table(
    const std::vector<EdgeNodeProfile>& nodes, int max_rounds,
    const AvailabilityRealization& real) {
  std::vector<std::vector<bool>> present(nodes.size(),
                                         std::vector<bool>(max_rounds, false));
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    bool here = nodes[n].initially_available;
    for (int r = 0; r < max_rounds; ++r) {
      present[n][r] = here;
      here = here && real.stays[n][r];
    }
  }
  return present;
}

}  // namespace

AssignmentSchedule assign_online(AssignmentPolicy policy,
                                 const SubtaskBatch& batch,
                                 const std::vector<EdgeNodeProfile>& nodes,
                                 int max_rounds,
                                 const AvailabilityRealization& realization,
                                 double penalty, std::mt19937_64& rng) {
  int n_sub = batch.count();
  if (n_sub < 1) throw std::invalid_argument("empty subtask batch");
  auto present = presence_table(nodes, max_rounds, realization);
  {
    long long cap = 0;
    for (const auto& node : nodes) {
      if (node.capacity < 1) throw std::invalid_argument("node capacity must be >= 1");
      if (node.initially_available) cap += node.capacity;
    }
    if (cap < 1) throw std::invalid_argument("no initially available capacity");
  }

  AssignmentSchedule sched;
  sched.completion_round.assign(n_sub, 0);
  std::vector<int> pending(n_sub);
  std::iota(pending.begin(), pending.end(), 0);

  for (int round = 1; round <= max_rounds && !pending.empty(); ++round) {
    std::vector<int> avail;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (present[n][round - 1]) avail.push_back(static_cast<int>(n));
    }
    if (avail.empty()) continue;

    // rank nodes per policy; ids break ties for determinism
    if (policy == AssignmentPolicy::PaOpt) {
      std::stable_sort(avail.begin(), avail.end(), [&](int a, int b) {
        double ea = nodes[a].persistence > 0
                        ? nodes[a].cost / nodes[a].persistence
                        : std::numeric_limits<double>::infinity();
        double eb = nodes[b].persistence > 0
                        ? nodes[b].cost / nodes[b].persistence
                        : std::numeric_limits<double>::infinity();
        if (ea != eb) return ea < eb;
        return nodes[a].id < nodes[b].id;
      });
    } else if (policy == AssignmentPolicy::GreedyNoPredict) {
      std::stable_sort(avail.begin(), avail.end(), [&](int a, int b) {
        if (nodes[a].cost != nodes[b].cost) return nodes[a].cost < nodes[b].cost;
        return nodes[a].id < nodes[b].id;
      });
    }

    std::vector<int> load(nodes.size(), 0);
    std::vector<std::pair<int, int>> assigned;  // (subtask, node)
    for (int sub : pending) {
      int node = -1;
      if (policy == AssignmentPolicy::Random) {
        std::vector<int> open;
        for (int a : avail) {
          if (load[a] < nodes[a].capacity) open.push_back(a);
        }
        if (!open.empty()) node = open[rng() % open.size()];
      } else {
        for (int a : avail) {
          if (load[a] < nodes[a].capacity) {
            node = a;
            break;
          }
        }
      }
      if (node < 0) break;  // round capacity exhausted
      ++load[node];
      assigned.emplace_back(sub, node);
    }

    std::vector<int> still_pending;
    std::size_t cursor = 0;
    for (int sub : pending) {
      if (cursor < assigned.size() && assigned[cursor].first == sub) {
        int node = assigned[cursor].second;
        ++cursor;
        bool done = realization.stays[node][round - 1];
        sched.entries.push_back({round, sub, node, done});
        if (done) {
          sched.completion_round[sub] = round;
          sched.total_cost += nodes[node].cost;
        } else {
          still_pending.push_back(sub);  // node departed mid-round
        }
      } else {
        still_pending.push_back(sub);
      }
    }
    pending = std::move(still_pending);
  }

  sched.complete = pending.empty();
  sched.total_cost += penalty * pending.size();
  return sched;
}

AssignmentSchedule pa_opt_assign(const SubtaskBatch& batch,
                                 const std::vector<EdgeNodeProfile>& nodes,
                                 int max_rounds, double penalty,
                                 std::mt19937_64& rng) {
  auto realization = realize_availability(nodes, max_rounds, rng);
  return assign_online(AssignmentPolicy::PaOpt, batch, nodes, max_rounds,
                       realization, penalty, rng);
}

double offline_opt(const SubtaskBatch& batch,
                   const std::vector<EdgeNodeProfile>& nodes, int max_rounds,
                   const AvailabilityRealization& realization, double penalty) {
  int n_sub = batch.count();
  auto present = presence_table(nodes, max_rounds, realization);
  std::vector<double> slot_costs;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    for (int r = 0; r < max_rounds; ++r) {
      if (present[n][r] && realization.stays[n][r]) {
        for (int c = 0; c < nodes[n].capacity; ++c) {
          slot_costs.push_back(nodes[n].cost);
        }
      }
    }
  }
  std::sort(slot_costs.begin(), slot_costs.end());
  double total = 0.0;
  for (int i = 0; i < n_sub; ++i) {
    double slot = i < static_cast<int>(slot_costs.size())
                      ? slot_costs[i]
                      : std::numeric_limits<double>::infinity();
    total += std::min(slot, penalty);
  }
  return total;
}

double competition_ratio(double online_cost, double offline_cost) {
  if (offline_cost <= 0) {
    throw std::invalid_argument("competition ratio undefined for non-positive offline cost");
  }
  return online_cost / offline_cost;
}

}  // namespace agtrack
