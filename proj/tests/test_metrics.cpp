#include "doctest.h"

#include <algorithm>
#include <random>

#include "agtrack/metrics.hpp"

using namespace agtrack;

TEST_CASE("singleton aggregation") {
  EpisodeMetrics m;
  m.tracked_fraction = 1.0;
  Summary s = aggregate({m});
  CHECK(s.stats.at("tracked_fraction").mean == doctest::Approx(1.0));
  CHECK(s.stats.at("tracked_fraction").sd == doctest::Approx(0.0));
}

TEST_CASE("two-value statistics") {
  EpisodeMetrics a, b;
  a.case3_seconds = 1.0;
  b.case3_seconds = 3.0;
  Summary s = aggregate({a, b});
  const Stat& st = s.stats.at("case3_seconds");
  CHECK(st.mean == doctest::Approx(2.0));
  CHECK(st.min == doctest::Approx(1.0));
  CHECK(st.max == doctest::Approx(3.0));
  CHECK(st.sd == doctest::Approx(1.0));  // population formula
}

TEST_CASE("summary is invariant under permutation") {
  std::vector<EpisodeMetrics> eps;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    EpisodeMetrics m;
    m.tracked_fraction = uni(rng);
    m.loss_events = static_cast<int>(uni(rng) * 5);
    m.case3_seconds = uni(rng) * 30;
    if (i % 2 == 0) m.mean_reacquisition_time = uni(rng) * 10;
    eps.push_back(m);
  }
  Summary base = aggregate(eps);
  std::shuffle(eps.begin(), eps.end(), rng);
  Summary shuffled = aggregate(eps);
  for (const auto& [name, st] : base.stats) {
    CHECK(shuffled.stats.at(name).mean == doctest::Approx(st.mean));
    CHECK(shuffled.stats.at(name).sd == doctest::Approx(st.sd));
    CHECK(shuffled.stats.at(name).min == st.min);
    CHECK(shuffled.stats.at(name).max == st.max);
  }
}

TEST_CASE("absent optional metrics are skipped, not zeroed") {
  EpisodeMetrics with, without;
  with.mean_reacquisition_time = 4.0;
  Summary s = aggregate({with, without});
  const Stat& st = s.stats.at("mean_reacquisition_time");
  CHECK(st.count == 1);
  CHECK(st.mean == doctest::Approx(4.0));
  // no episode has a ratio: the stat is absent entirely
  CHECK(s.stats.find("mean_competition_ratio") == s.stats.end());
}

TEST_CASE("empty input is an error") {
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}
