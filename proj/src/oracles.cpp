#include "agtrack/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "agtrack/asrt.hpp"
#include "agtrack/cacat.hpp"
#include "agtrack/mra.hpp"
#include "agtrack/qoe.hpp"

namespace agtrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;

double uni(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uni_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// ---------------------------------------------------------------- MRA ----

// Independent tuple-time evaluation: recursive enumeration of all paths
// from the source, taking the worst one, with the latency formulas written
// out directly.
double oracle_tuple_time(const StreamDag& dag, const std::vector<int>& placement,
                         const std::vector<ServerProfile>& servers,
                         Vec2 uav_pos, const LinkSet& links) {
  const LinkParams& lte = links.uav_lte;
  const LinkParams& wifi = links.camera_wifi;
  const ServerProfile& src = servers[placement[dag.source]];
  double d_up = std::hypot(uav_pos.x - src.position.x, uav_pos.y - src.position.y);
  double uplink = lte.overhead + d_up * lte.propagation + dag.uplink_bits / lte.rate;

  std::function<double(int)> worst_from = [&](int c) -> double {
    double own = dag.components[c].cycles / servers[placement[c]].frequency;
    double best_tail = 0.0;
    for (const DagEdge& e : dag.edges) {
      if (e.from != c) continue;
      double transfer = 0.0;
      if (placement[e.from] != placement[e.to]) {
        const ServerProfile& a = servers[placement[e.from]];
        const ServerProfile& b = servers[placement[e.to]];
        double dist = std::hypot(a.position.x - b.position.x,
                                 a.position.y - b.position.y);
        transfer = wifi.overhead + dist * wifi.propagation + e.bits / wifi.rate;
      }
      best_tail = std::max(best_tail, transfer + worst_from(e.to));
    }
    return own + best_tail;
  };
  return uplink + worst_from(dag.source);
}

double oracle_mean_cost(const StreamDag& dag, const std::vector<int>& placement,
                        const std::vector<ServerProfile>& servers,
                        const UavForecast& forecast, const LinkSet& links) {
  double sum = 0.0;
  for (const auto& [t, pos] : forecast.points) {
    sum += oracle_tuple_time(dag, placement, servers, pos, links);
  }
  return sum / forecast.points.size();
}

struct MraInstance {
  StreamDag dag;
  std::vector<ServerProfile> servers;
  UavForecast forecast;
  LinkSet links;
};

MraInstance random_mra_instance(std::mt19937_64& rng) {
  MraInstance inst;
  int ncomp = uni_int(rng, 1, 4);
  int nserv = uni_int(rng, 1, 3);
  double total_mem = 0.0;
  for (int i = 0; i < ncomp; ++i) {
    DagComponent c;
    c.cycles = uni(rng, 1e7, 2e8);
    c.memory = uni(rng, 1e8, 4e8);
    total_mem += c.memory;
    inst.dag.components.push_back(c);
  }
  for (int i = 1; i < ncomp; ++i) {
    inst.dag.edges.push_back({uni_int(rng, 0, i - 1), i, uni(rng, 1e5, 5e6)});
  }
  inst.dag.uplink_bits = uni(rng, 1e6, 1e7);
  inst.dag.source = 0;
  for (int s = 0; s < nserv; ++s) {
    ServerProfile p;
    p.id = s;
    p.position = {uni(rng, -500, 500), uni(rng, -500, 500)};
    p.frequency = uni(rng, 5e8, 4e9);
    // the first server always fits the whole dag so feasibility holds
    p.memory = s == 0 ? total_mem * 1.1 : uni(rng, 1e8, 8e8);
    inst.servers.push_back(p);
  }
  Vec2 pos{uni(rng, -500, 500), uni(rng, -500, 500)};
  Vec2 vel{uni(rng, -20, 20), uni(rng, -20, 20)};
  inst.forecast = UavForecast::straight_line(pos, vel, 10.0, 5);
  return inst;
}

// ---------------------------------------------------------------- ASRT ----

struct AsrtInstance {
  CameraGraph graph;
  std::vector<int> candidates;
  Vec2 uav_pos;
  int k_max = 3;
  double activation_bits = 1e6;
  LinkSet links;
};

AsrtInstance random_asrt_instance(std::mt19937_64& rng) {
  AsrtInstance inst;
  int nc = uni_int(rng, 1, 6);
  for (int i = 0; i < nc; ++i) {
    CameraState cam;
    cam.id = i;
    cam.position = {uni(rng, -400, 400), uni(rng, -400, 400)};
    cam.radius = uni(rng, 20, 80);
    inst.graph.cameras.push_back(cam);
    inst.candidates.push_back(i);
  }
  // random spanning tree plus a few extra edges keeps everything reachable
  for (int i = 1; i < nc; ++i) {
    inst.graph.edges.push_back({uni_int(rng, 0, i - 1), i, uni(rng, 1e-4, 5e-3)});
  }
  int extra = uni_int(rng, 0, nc);
  for (int e = 0; e < extra && nc > 1; ++e) {
    int a = uni_int(rng, 0, nc - 1);
    int b = uni_int(rng, 0, nc - 1);
    if (a != b) inst.graph.edges.push_back({a, b, uni(rng, 1e-4, 5e-3)});
  }
  inst.uav_pos = {uni(rng, -400, 400), uni(rng, -400, 400)};
  inst.k_max = uni_int(rng, 1, 3);
  return inst;
}

// Independent plan optimum: Floyd-Warshall plus subset enumeration.
double oracle_asrt_optimum(const AsrtInstance& inst) {
  int nc = static_cast<int>(inst.candidates.size());
  int n = static_cast<int>(inst.graph.cameras.size());
  std::vector<std::vector<double>> sp(n, std::vector<double>(n, kInf));
  for (int i = 0; i < n; ++i) sp[i][i] = 0.0;
  for (const LanEdge& e : inst.graph.edges) {
    sp[e.a][e.b] = std::min(sp[e.a][e.b], e.delay);
    sp[e.b][e.a] = std::min(sp[e.b][e.a], e.delay);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        sp[i][j] = std::min(sp[i][j], sp[i][k] + sp[k][j]);
      }
    }
  }
  const LinkParams& lte = inst.links.uav_lte;
  std::vector<double> direct(nc);
  for (int i = 0; i < nc; ++i) {
    const CameraState& cam = inst.graph.cameras[inst.candidates[i]];
    double d = std::hypot(inst.uav_pos.x - cam.position.x,
                          inst.uav_pos.y - cam.position.y);
    direct[i] = lte.overhead + d * lte.propagation + inst.activation_bits / lte.rate;
  }
  double best = kInf;
  for (unsigned mask = 1; mask < (1u << nc); ++mask) {
    if (__builtin_popcount(mask) > inst.k_max) continue;
    double total = 0.0;
    for (int j = 0; j < nc; ++j) {
      double t = kInf;
      for (int k = 0; k < nc; ++k) {
        if (!(mask & (1u << k))) continue;
        t = std::min(t, direct[k] + sp[inst.candidates[k]][inst.candidates[j]]);
      }
      total = std::max(total, t);
    }
    best = std::min(best, total);
  }
  return best;
}

// ---------------------------------------------------------------- QoE ----

struct QoeInstance {
  std::vector<VideoTask> tasks;
  TerminalProfile terminal;
  EdgeServerProfile server;
  double bandwidth = 1e7;
  QoeWeights weights;
};

QoeInstance random_qoe_instance(std::mt19937_64& rng) {
  QoeInstance inst;
  int n = uni_int(rng, 1, 8);
  for (int i = 0; i < n; ++i) {
    VideoTask t;
    t.data_bits = uni_int(rng, 0, 4) == 0 ? 0.0 : uni(rng, 1e5, 1e7);
    t.cycles = uni(rng, 1e7, 2e9);
    inst.tasks.push_back(t);
  }
  inst.terminal.f_local = uni(rng, 5e8, 2e9);
  inst.terminal.kappa = 1e-27;
  inst.terminal.p_tx = uni(rng, 0.1, 1.0);
  inst.server.f_edge = uni(rng, 2e9, 8e9);
  inst.bandwidth = uni(rng, 1e6, 5e7);
  inst.weights.latency = uni(rng, 0.1, 2.0);
  inst.weights.energy = uni(rng, 0.0, 2.0);
  return inst;
}

// Independent subset cost with the formulas written out directly.
double oracle_qoe_subset_cost(const QoeInstance& inst, unsigned mask) {
  double total_data = 0.0;
  int n_off = 0;
  for (std::size_t i = 0; i < inst.tasks.size(); ++i) {
    if (mask & (1u << i)) {
      total_data += inst.tasks[i].data_bits;
      ++n_off;
    }
  }
  double cost = 0.0;
  for (std::size_t i = 0; i < inst.tasks.size(); ++i) {
    const VideoTask& t = inst.tasks[i];
    if (mask & (1u << i)) {
      double rate = total_data > 0
                        ? inst.bandwidth * t.data_bits / total_data
                        : inst.bandwidth / n_off;
      double upload = t.data_bits > 0 ? t.data_bits / rate : 0.0;
      double lat = upload + t.cycles / inst.server.f_edge;
      double energy = t.data_bits > 0 ? inst.terminal.p_tx * upload : 0.0;
      cost += inst.weights.latency * lat + inst.weights.energy * energy;
    } else {
      double lat = t.cycles / inst.terminal.f_local;
      double energy = inst.terminal.kappa * inst.terminal.f_local *
                      inst.terminal.f_local * t.cycles;
      cost += inst.weights.latency * lat + inst.weights.energy * energy;
    }
  }
  return cost;
}

// ---------------------------------------------------------------- CACAT ----

struct CacatInstance {
  SubtaskBatch batch;
  std::vector<EdgeNodeProfile> nodes;
  int max_rounds = 3;
  double penalty = 10.0;
};

CacatInstance random_cacat_instance(std::mt19937_64& rng) {
  CacatInstance inst;
  inst.batch = split_task(0, uni_int(rng, 2, 8), uni_int(rng, 1, 3));
  int nn = uni_int(rng, 1, 4);
  double max_cost = 0.0;
  for (int i = 0; i < nn; ++i) {
    EdgeNodeProfile n;
    n.id = i;
    n.capacity = uni_int(rng, 1, 3);
    n.cost = uni(rng, 0.5, 5.0);
    n.persistence = uni(rng, 0.3, 1.0);
    n.initially_available = i == 0 ? true : uni_int(rng, 0, 3) > 0;
    max_cost = std::max(max_cost, n.cost);
    inst.nodes.push_back(n);
  }
  inst.max_rounds = uni_int(rng, 2, 4);
  inst.penalty = 10.0 * max_cost;
  return inst;
}

// Independent exact offline optimum: recursive enumeration over slot
// choices with capacity tracking. Subtasks are interchangeable, so choices
// are enumerated in nondecreasing order to bound the search.
double oracle_cacat_offline(const CacatInstance& inst,
                            const AvailabilityRealization& real) {
  struct Slot {
    int node;
    int round;
    double cost;
  };
  int nn = static_cast<int>(inst.nodes.size());
  std::vector<Slot> slots;
  std::vector<std::vector<bool>> present(nn,
                                         std::vector<bool>(inst.max_rounds));
  for (int n = 0; n < nn; ++n) {
    bool here = inst.nodes[n].initially_available;
    for (int r = 0; r < inst.max_rounds; ++r) {
      present[n][r] = here;
      here = here && real.stays[n][r];
      if (present[n][r] && real.stays[n][r]) {
        slots.push_back({n, r, inst.nodes[n].cost});
      }
    }
  }
  int n_sub = inst.batch.count();
  double best = kInf;
  std::vector<int> used(slots.size(), 0);
  std::function<void(int, int, double)> rec = [&](int sub, int min_choice,
                                                  double acc) {
    if (acc >= best) return;
    if (sub == n_sub) {
      best = acc;
      return;
    }
    // choice slots.size() = penalty; once one subtask takes the penalty all
    // later ones do too
    for (int c = min_choice; c <= static_cast<int>(slots.size()); ++c) {
      if (c == static_cast<int>(slots.size())) {
        rec(sub + 1, c, acc + inst.penalty);
      } else {
        if (used[c] >= inst.nodes[slots[c].node].capacity) continue;
        ++used[c];
        rec(sub + 1, c, acc + slots[c].cost);
        --used[c];
      }
    }
  };
  rec(0, 0, 0.0);
  return best;
}

}  // namespace

OracleReport oracle_mra(int trials, std::uint64_t seed) {
  OracleReport report;
  report.check = "mra";
  report.trials = trials;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    MraInstance inst = random_mra_instance(rng);
    Placement got = mra_place(inst.dag, inst.servers, inst.forecast, inst.links);
    double got_cost =
        oracle_mean_cost(inst.dag, got, inst.servers, inst.forecast, inst.links);
    // brute force over all placements
    int n = static_cast<int>(inst.dag.components.size());
    int m = static_cast<int>(inst.servers.size());
    double best = kInf;
    std::vector<int> digits(n, 0);
    while (true) {
      if (placement_feasible(inst.dag, digits, inst.servers)) {
        best = std::min(best, oracle_mean_cost(inst.dag, digits, inst.servers,
                                               inst.forecast, inst.links));
      }
      int i = n - 1;
      while (i >= 0 && digits[i] == m - 1) digits[i--] = 0;
      if (i < 0) break;
      ++digits[i];
    }
    double dev = std::abs(got_cost - best) / std::max(1.0, best);
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev <= kTol) {
      ++report.passed;
    } else if (report.failure.empty()) {
      std::ostringstream msg;
      msg << "trial " << t << ": mra cost " << got_cost << " vs optimum " << best;
      report.failure = msg.str();
    }
  }
  return report;
}

OracleReport oracle_asrt(int trials, std::uint64_t seed) {
  OracleReport report;
  report.check = "asrt";
  report.trials = trials;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    AsrtInstance inst = random_asrt_instance(rng);
    ActivationPlan plan =
        plan_activation(inst.graph, inst.candidates, inst.uav_pos, inst.k_max,
                        inst.links, inst.activation_bits);
    double optimum = oracle_asrt_optimum(inst);

    // all-direct plan: every candidate contacted over LTE
    double all_direct = 0.0;
    for (int id : inst.candidates) {
      const CameraState& cam = inst.graph.cameras[id];
      all_direct = std::max(
          all_direct, link_latency(inst.links, LinkKind::UavLte,
                                   inst.activation_bits,
                                   distance(inst.uav_pos, cam.position)));
    }

    // an unrestricted key budget always beats contacting everyone directly;
    // the budget-limited plan is compared against the enumerated optimum only
    ActivationPlan unrestricted = plan_activation(
        inst.graph, inst.candidates, inst.uav_pos,
        static_cast<int>(inst.candidates.size()), inst.links,
        inst.activation_bits);

    double dev = std::abs(plan.total - optimum) / std::max(1e-6, optimum);
    report.max_deviation = std::max(report.max_deviation, dev);
    bool ok = dev <= kTol && unrestricted.total <= all_direct + kTol &&
              plan.keys.size() <= inst.candidates.size();
    if (ok) {
      ++report.passed;
    } else if (report.failure.empty()) {
      std::ostringstream msg;
      msg << "trial " << t << ": plan total " << plan.total << " vs optimum "
          << optimum << " (all-direct " << all_direct << ")";
      report.failure = msg.str();
    }
  }
  return report;
}

OracleReport oracle_qoe(int trials, std::uint64_t seed) {
  OracleReport report;
  report.check = "qoe";
  report.trials = trials;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    QoeInstance inst = random_qoe_instance(rng);
    OffloadDecision got = joint_allocate(inst.tasks, {inst.terminal},
                                         inst.server, inst.bandwidth,
                                         inst.weights);
    unsigned n = static_cast<unsigned>(inst.tasks.size());
    double best = kInf;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      best = std::min(best, oracle_qoe_subset_cost(inst, mask));
    }
    double all_local = oracle_qoe_subset_cost(inst, 0);
    double all_edge = oracle_qoe_subset_cost(inst, (1u << n) - 1);

    double dev = std::abs(got.total_cost - best) / std::max(1e-9, best);
    report.max_deviation = std::max(report.max_deviation, dev);
    bool ok = dev <= kTol && got.total_cost <= all_local + kTol &&
              got.total_cost <= all_edge + kTol;
    if (ok) {
      ++report.passed;
    } else if (report.failure.empty()) {
      std::ostringstream msg;
      msg << "trial " << t << ": joint cost " << got.total_cost
          << " vs optimum " << best;
      report.failure = msg.str();
    }
  }
  return report;
}

OracleReport oracle_cacat(int trials, std::uint64_t seed) {
  OracleReport report;
  report.check = "cacat";
  report.trials = trials;
  std::mt19937_64 rng(seed);
  double sum_ratio_pa = 0.0;
  double sum_ratio_random = 0.0;
  int ratio_count = 0;
  for (int t = 0; t < trials; ++t) {
    CacatInstance inst = random_cacat_instance(rng);
    auto realization = realize_availability(inst.nodes, inst.max_rounds, rng);
    AssignmentSchedule pa =
        assign_online(AssignmentPolicy::PaOpt, inst.batch, inst.nodes,
                      inst.max_rounds, realization, inst.penalty, rng);
    AssignmentSchedule random_sched =
        assign_online(AssignmentPolicy::Random, inst.batch, inst.nodes,
                      inst.max_rounds, realization, inst.penalty, rng);
    double offline_ind = oracle_cacat_offline(inst, realization);
    double offline_impl = offline_opt(inst.batch, inst.nodes, inst.max_rounds,
                                      realization, inst.penalty);

    bool ok = true;
    std::ostringstream why;
    if (std::abs(offline_ind - offline_impl) > kTol * std::max(1.0, offline_ind)) {
      ok = false;
      why << "offline mismatch " << offline_impl << " vs " << offline_ind;
    }
    if (offline_ind > 0) {
      double ratio = pa.total_cost / offline_ind;
      double ratio_r = random_sched.total_cost / offline_ind;
      sum_ratio_pa += ratio;
      sum_ratio_random += ratio_r;
      ++ratio_count;
      report.max_deviation = std::max(report.max_deviation, 1.0 - ratio);
      if (ratio < 1.0 - kTol) {
        ok = false;
        why << " ratio " << ratio << " below 1";
      }
    }
    if (ok) {
      ++report.passed;
    } else if (report.failure.empty()) {
      report.failure = "trial " + std::to_string(t) + ": " + why.str();
    }
  }
  if (ratio_count > 0 && sum_ratio_pa > sum_ratio_random + kTol) {
    if (report.failure.empty()) {
      std::ostringstream msg;
      msg << "mean ratio pa-opt " << sum_ratio_pa / ratio_count
          << " exceeds random baseline " << sum_ratio_random / ratio_count;
      report.failure = msg.str();
    }
    report.passed = std::min(report.passed, report.trials - 1);
  }
  return report;
}

OracleReport run_oracle(const std::string& check, int trials,
                        std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (check == "mra") return oracle_mra(trials, seed);
  if (check == "asrt") return oracle_asrt(trials, seed);
  if (check == "qoe") return oracle_qoe(trials, seed);
  if (check == "cacat") return oracle_cacat(trials, seed);
  throw std::invalid_argument("unknown oracle check: " + check);
}

}  // namespace agtrack
