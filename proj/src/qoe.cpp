#include "agtrack/qoe.hpp"

#include <limits>
#include <stdexcept>

namespace agtrack {

namespace {

const TerminalProfile& terminal_for(const std::vector<TerminalProfile>& ts,
                                    std::size_t i) {
  if (ts.empty()) throw std::invalid_argument("no terminal profiles");
  return ts.size() == 1 ? ts[0] : ts.at(i);
}

// Proportional-to-data split so all uploads finish together; zero-data
// offloaded tasks share the bandwidth equally when nothing else uses it.
std::vector<double> split_bandwidth(const std::vector<VideoTask>& tasks,
                                    const std::vector<bool>& offloaded,
                                    double total_bandwidth) {
  std::vector<double> rates(tasks.size(), 0.0);
  double total_data = 0.0;
  int n_off = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (offloaded[i]) {
      total_data += tasks[i].data_bits;
      ++n_off;
    }
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!offloaded[i]) continue;
    if (total_data > 0) {
      rates[i] = total_bandwidth * tasks[i].data_bits / total_data;
    } else {
      rates[i] = total_bandwidth / n_off;
    }
  }
  return rates;
}

double subset_cost(const std::vector<VideoTask>& tasks,
                   const std::vector<TerminalProfile>& terminals,
                   const EdgeServerProfile& server,
                   const std::vector<bool>& offloaded,
                   const std::vector<double>& rates, const QoeWeights& w) {
  double total = 0.0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    OffloadSide side = offloaded[i] ? OffloadSide::Edge : OffloadSide::Local;
    total += task_cost(tasks[i], side, terminal_for(terminals, i), server,
                       rates[i], w);
  }
  return total;
}

}  // namespace

double task_latency(const VideoTask& task, OffloadSide side,
                    const TerminalProfile& terminal,
                    const EdgeServerProfile& server, double rate) {
  if (side == OffloadSide::Local) {
    return task.cycles / terminal.f_local;
  }
  double upload = 0.0;
  if (task.data_bits > 0) {
    if (rate <= 0) throw std::invalid_argument("edge offload requires a positive rate");
    upload = task.data_bits / rate;
  }
  return upload + task.cycles / server.f_edge;
}

double task_cost(const VideoTask& task, OffloadSide side,
                 const TerminalProfile& terminal, const EdgeServerProfile& server,
                 double rate, const QoeWeights& w) {
  double t = task_latency(task, side, terminal, server, rate);
  double e;
  if (side == OffloadSide::Local) {
    e = terminal.kappa * terminal.f_local * terminal.f_local * task.cycles;
  } else {
    e = task.data_bits > 0 ? terminal.p_tx * task.data_bits / rate : 0.0;
  }
  return w.latency * t + w.energy * e;
}

OffloadSide decide(const VideoTask& task, const TerminalProfile& terminal,
                   const EdgeServerProfile& server, double rate,
                   const QoeWeights& w) {
  if (rate <= 0) throw std::invalid_argument("decide requires a positive rate");
  double local = task_cost(task, OffloadSide::Local, terminal, server, 0.0, w);
  double edge = task_cost(task, OffloadSide::Edge, terminal, server, rate, w);
  return edge < local ? OffloadSide::Edge : OffloadSide::Local;
}

OffloadDecision joint_allocate(const std::vector<VideoTask>& tasks,
                               const std::vector<TerminalProfile>& terminals,
                               const EdgeServerProfile& server,
                               double total_bandwidth, const QoeWeights& w) {
  if (total_bandwidth <= 0) throw std::invalid_argument("bandwidth must be positive");
  std::size_t n = tasks.size();
  OffloadDecision best;
  best.sides.assign(n, OffloadSide::Local);
  best.rates.assign(n, 0.0);
  if (n == 0) return best;

  auto pack = [&](const std::vector<bool>& offloaded) {
    auto rates = split_bandwidth(tasks, offloaded, total_bandwidth);
    double cost = subset_cost(tasks, terminals, server, offloaded, rates, w);
    return std::pair(rates, cost);
  };

  std::vector<bool> offloaded(n, false);
  auto [rates0, cost0] = pack(offloaded);
  best.rates = rates0;
  best.total_cost = cost0;

  if (n <= 10) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<bool> off(n);
      for (std::size_t i = 0; i < n; ++i) off[i] = mask & (1u << i);
      auto [rates, cost] = pack(off);
      if (cost < best.total_cost) {
        best.total_cost = cost;
        best.rates = rates;
        for (std::size_t i = 0; i < n; ++i) {
          best.sides[i] = off[i] ? OffloadSide::Edge : OffloadSide::Local;
        }
      }
    }
    return best;
  }

  // best-response: flip the single task whose flip helps most
  double current = cost0;
  while (true) {
    int best_flip = -1;
    double best_after = current;
    std::vector<double> best_rates;
    for (std::size_t i = 0; i < n; ++i) {
      offloaded[i] = !offloaded[i];
      auto [rates, cost] = pack(offloaded);
      offloaded[i] = !offloaded[i];
      if (cost < best_after) {
        best_after = cost;
        best_flip = static_cast<int>(i);
        best_rates = rates;
      }
    }
    if (best_flip < 0) break;
    offloaded[best_flip] = !offloaded[best_flip];
    current = best_after;
    best.total_cost = current;
    best.rates = best_rates;
    for (std::size_t i = 0; i < n; ++i) {
      best.sides[i] = offloaded[i] ? OffloadSide::Edge : OffloadSide::Local;
    }
  }
  return best;
}

}  // namespace agtrack
