#include "doctest.h"

#include <random>
#include <stdexcept>

#include "agtrack/oracles.hpp"
#include "agtrack/qoe.hpp"

using namespace agtrack;

namespace {
const TerminalProfile kTerm{1e9, 1e-27, 0.5};
const EdgeServerProfile kServer{4e9};
}  // namespace

TEST_CASE("task cost formulas") {
  QoeWeights w{1.0, 0.0};
  VideoTask zero;
  CHECK(task_cost(zero, OffloadSide::Local, kTerm, kServer, 0.0, w) == 0.0);

  VideoTask compute_only{.data_bits = 0, .cycles = 2e9};
  CHECK(task_cost(compute_only, OffloadSide::Edge, kTerm, kServer, 1e6, w) ==
        doctest::Approx(0.5));

  VideoTask local{.data_bits = 0, .cycles = 1e9};
  CHECK(task_cost(local, OffloadSide::Local, kTerm, kServer, 0.0, w) ==
        doctest::Approx(1.0));
}

TEST_CASE("edge offload with data requires a rate") {
  VideoTask t{.data_bits = 1e6, .cycles = 1e9};
  CHECK_THROWS_AS(
      task_cost(t, OffloadSide::Edge, kTerm, kServer, 0.0, QoeWeights{}),
      std::invalid_argument);
}

TEST_CASE("task cost is nonincreasing in rate for edge") {
  VideoTask t{.data_bits = 1e7, .cycles = 1e9};
  QoeWeights w{1.0, 1.0};
  double prev = 1e18;
  for (double rate : {1e6, 2e6, 1e7, 1e8}) {
    double c = task_cost(t, OffloadSide::Edge, kTerm, kServer, rate, w);
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("decide dominance cases") {
  QoeWeights w{1.0, 0.1};
  // pure transmission for nothing stays local
  VideoTask data_only{.data_bits = 1e6, .cycles = 0};
  CHECK(decide(data_only, kTerm, kServer, 1e6, w) == OffloadSide::Local);
  // free upload to a faster server goes edge
  VideoTask compute_only{.data_bits = 0, .cycles = 1e9};
  CHECK(decide(compute_only, kTerm, kServer, 1e6, QoeWeights{1.0, 0.0}) ==
        OffloadSide::Edge);
}

TEST_CASE("decide equals the argmin of the two enumerated costs") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    VideoTask t{.data_bits = uni(rng) * 1e7, .cycles = uni(rng) * 2e9};
    double rate = 1e5 + uni(rng) * 1e7;
    QoeWeights w{0.1 + uni(rng), uni(rng)};
    double local = task_cost(t, OffloadSide::Local, kTerm, kServer, 0, w);
    double edge = task_cost(t, OffloadSide::Edge, kTerm, kServer, rate, w);
    OffloadSide expect = edge < local ? OffloadSide::Edge : OffloadSide::Local;
    CHECK(decide(t, kTerm, kServer, rate, w) == expect);
  }
}

TEST_CASE("decide is invariant under common weight scaling") {
  VideoTask t{.data_bits = 5e6, .cycles = 8e8};
  for (double scale : {0.01, 1.0, 250.0}) {
    QoeWeights w{0.7 * scale, 0.3 * scale};
    CHECK(decide(t, kTerm, kServer, 2e6, w) ==
          decide(t, kTerm, kServer, 2e6, QoeWeights{0.7, 0.3}));
  }
}

TEST_CASE("joint allocation with one task reduces to decide") {
  VideoTask t{.data_bits = 4e6, .cycles = 1e9};
  QoeWeights w{1.0, 0.2};
  double bw = 8e6;
  OffloadDecision d = joint_allocate({t}, {kTerm}, kServer, bw, w);
  CHECK(d.sides[0] == decide(t, kTerm, kServer, bw, w));
}

TEST_CASE("vanishing bandwidth drives everything local") {
  std::vector<VideoTask> tasks{{.data_bits = 1e6, .cycles = 1e9},
                               {.data_bits = 2e6, .cycles = 5e8}};
  OffloadDecision d = joint_allocate(tasks, {kTerm}, kServer, 1.0,
                                     QoeWeights{1.0, 0.0});
  CHECK(d.sides[0] == OffloadSide::Local);
  CHECK(d.sides[1] == OffloadSide::Local);
}

TEST_CASE("bandwidth conservation with equality when offloading") {
  std::vector<VideoTask> tasks;
  for (int i = 0; i < 5; ++i) {
    tasks.push_back({.data_bits = 1e6 * (i + 1), .cycles = 2e9});
  }
  double bw = 5e7;
  OffloadDecision d =
      joint_allocate(tasks, {kTerm}, kServer, bw, QoeWeights{1.0, 0.0});
  double sum = 0.0;
  bool any_edge = false;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    sum += d.rates[i];
    if (d.sides[i] == OffloadSide::Edge) any_edge = true;
    if (d.sides[i] == OffloadSide::Local) CHECK(d.rates[i] == 0.0);
  }
  CHECK(sum <= bw + 1e-6);
  if (any_edge) CHECK(sum == doctest::Approx(bw));
}

TEST_CASE("joint allocation matches the exhaustive-subset oracle") {
  OracleReport report = oracle_qoe(80, 99);
  CHECK(report.ok());
}
