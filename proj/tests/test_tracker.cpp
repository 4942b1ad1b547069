#include "doctest.h"

#include <string>

#include "agtrack/scenario.hpp"
#include "agtrack/tracker.hpp"

using namespace agtrack;

namespace {

Scenario load_named(const char* name) {
  return load_scenario(std::string(AGTRACK_SCENARIO_DIR) + "/" + name);
}

const StrategyToggles& config(const Scenario& sc, const std::string& name) {
  for (const StrategyToggles& t : sc.configs) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("no config named " + name);
}

int count_events(const std::vector<TraceRecord>& trace,
                 const std::string& prefix) {
  int n = 0;
  for (const TraceRecord& r : trace) {
    if (r.summary.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("case classification thresholds") {
  // boundaries are inclusive on the lower case
  CHECK(classify_state(0.0, 2.0, 2.0, 15.0) == TrackingCase::Case1Tracking);
  CHECK(classify_state(0.0, 2.001, 2.0, 15.0) ==
        TrackingCase::Case2AboutToLose);
  CHECK(classify_state(0.0, 15.0, 2.0, 15.0) ==
        TrackingCase::Case2AboutToLose);
  CHECK(classify_state(0.0, 15.001, 2.0, 15.0) == TrackingCase::Case3Lost);
  // a target never seen is pessimistic: unseen since t=0
  CHECK(classify_state(std::nullopt, 1.0, 2.0, 15.0) ==
        TrackingCase::Case2AboutToLose);
  CHECK(classify_state(std::nullopt, 20.0, 2.0, 15.0) ==
        TrackingCase::Case3Lost);
}

TEST_CASE("zero-length episode is trivially tracked") {
  Scenario sc = load_named("pursuit.json");
  sc.episode.duration = 0.0;
  EpisodeResult r = run_episode(sc, sc.configs[0], 0);
  CHECK(r.metrics.tracked_fraction == 1.0);
  CHECK(r.metrics.loss_events == 0);
  CHECK(r.metrics.flight_seconds == 0.0);
  CHECK(r.trace.empty());
}

TEST_CASE("open pursuit keeps the target in view") {
  Scenario sc = load_named("pursuit.json");
  for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
    EpisodeResult r = run_episode(sc, sc.configs[0], seed);
    CHECK(r.metrics.tracked_fraction > 0.95);
    CHECK(r.metrics.loss_events == 0);
    CHECK(r.metrics.case3_seconds == 0.0);
    CHECK(r.metrics.mean_tuple_latency.has_value());
  }
}

TEST_CASE("replay determinism at the episode level") {
  Scenario sc = load_named("occlusion.json");
  const StrategyToggles& full = config(sc, "full");
  EpisodeResult a = run_episode(sc, full, 3);
  EpisodeResult b = run_episode(sc, full, 3);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].time == b.trace[i].time);
    CHECK(a.trace[i].summary == b.trace[i].summary);
  }
  CHECK(a.metrics.tracked_fraction == b.metrics.tracked_fraction);
  CHECK(a.metrics.radio_joules == b.metrics.radio_joules);
  CHECK(a.metrics.total_qoe_cost == b.metrics.total_qoe_cost);
}

TEST_CASE("flight time never exceeds the battery budget") {
  Scenario sc = load_named("pursuit.json");
  sc.uav.battery_s = 5.0;
  EpisodeResult r = run_episode(sc, sc.configs[0], 0);
  CHECK(r.metrics.flight_seconds <= 5.0 + 1e-9);

  Scenario occ = load_named("occlusion.json");
  EpisodeResult full = run_episode(occ, config(occ, "full"), 0);
  CHECK(full.metrics.flight_seconds <= occ.uav.battery_s + 1e-9);
  CHECK(full.metrics.flight_seconds <= occ.episode.duration + 1e-9);
}

TEST_CASE("disabled strategies produce no camera traffic") {
  Scenario sc = load_named("occlusion.json");
  EpisodeResult r = run_episode(sc, config(sc, "uav_only"), 0);
  CHECK(count_events(r.trace, "activation-plan") == 0);
  CHECK(count_events(r.trace, "camera-activate") == 0);
  CHECK(count_events(r.trace, "detection") == 0);
  CHECK(count_events(r.trace, "uav-redirect") == 0);
  CHECK(r.metrics.total_qoe_cost == 0.0);
  CHECK(r.metrics.competition_ratios.empty());
}

TEST_CASE("occlusion scenario forces a loss and the full config recovers") {
  Scenario sc = load_named("occlusion.json");
  EpisodeResult full = run_episode(sc, config(sc, "full"), 0);
  CHECK(full.metrics.loss_events >= 1);
  CHECK(full.metrics.reacquired >= 1);
  CHECK(count_events(full.trace, "camera-activate") >= 1);
  CHECK(count_events(full.trace, "uav-redirect") >= 1);
}

TEST_CASE("case transitions follow the 1->2->{1,3}->1 machine") {
  Scenario sc = load_named("occlusion.json");
  for (const char* cfg : {"full", "uav_only"}) {
    EpisodeResult r = run_episode(sc, config(sc, cfg), 1);
    int state = 1;
    for (const TraceRecord& rec : r.trace) {
      if (rec.summary == "enter-case2") {
        CHECK(state == 1);
        state = 2;
      } else if (rec.summary == "enter-case3") {
        CHECK(state == 2);
        state = 3;
      } else if (rec.summary == "reacquired") {
        CHECK((state == 2 || state == 3));
        state = 1;
      }
    }
  }
}

TEST_CASE("cacat routing records competition ratios on recovery") {
  Scenario sc = load_named("reference.json");
  const StrategyToggles& cc = config(sc, "full_cacat");
  bool any = false;
  for (std::uint64_t seed : {0ULL, 1ULL, 2ULL, 3ULL, 4ULL}) {
    EpisodeResult r = run_episode(sc, cc, seed);
    for (double ratio : r.metrics.competition_ratios) {
      CHECK(ratio >= 1.0 - 1e-9);
      any = true;
    }
  }
  CHECK(any);  // at least one seed routes work through the edge nodes
}
