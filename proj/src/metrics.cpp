#include "agtrack/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace agtrack {

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "tracked_fraction",   "loss_events",       "reacquired",
      "mean_reacquisition_time", "case3_seconds", "flight_seconds",
      "radio_joules",       "mean_tuple_latency", "total_qoe_cost",
      "mean_competition_ratio"};
  return names;
}

std::optional<double> metric_value(const EpisodeMetrics& m,
                                   const std::string& name) {
  if (name == "tracked_fraction") return m.tracked_fraction;
  if (name == "loss_events") return static_cast<double>(m.loss_events);
  if (name == "reacquired") return static_cast<double>(m.reacquired);
  if (name == "mean_reacquisition_time") return m.mean_reacquisition_time;
  if (name == "case3_seconds") return m.case3_seconds;
  if (name == "flight_seconds") return m.flight_seconds;
  if (name == "radio_joules") return m.radio_joules;
  if (name == "mean_tuple_latency") return m.mean_tuple_latency;
  if (name == "total_qoe_cost") return m.total_qoe_cost;
  if (name == "mean_competition_ratio") {
    if (m.competition_ratios.empty()) return std::nullopt;
    double sum = 0.0;
    for (double r : m.competition_ratios) sum += r;
    return sum / m.competition_ratios.size();
  }
  throw std::invalid_argument("unknown metric: " + name);
}

Summary aggregate(const std::vector<EpisodeMetrics>& episodes) {
  if (episodes.empty()) throw std::invalid_argument("aggregate: empty episode list");
  Summary out;
  out.episodes = static_cast<int>(episodes.size());
  for (const std::string& name : metric_names()) {
    Stat st;
    double sum = 0.0, sq = 0.0;
    bool any = false;
    for (const EpisodeMetrics& m : episodes) {
      auto v = metric_value(m, name);
      if (!v) continue;
      if (!any) {
        st.min = st.max = *v;
        any = true;
      } else {
        st.min = std::min(st.min, *v);
        st.max = std::max(st.max, *v);
      }
      sum += *v;
      sq += *v * *v;
      ++st.count;
    }
    if (any) {
      st.mean = sum / st.count;
      double var = sq / st.count - st.mean * st.mean;
      st.sd = std::sqrt(std::max(0.0, var));
      out.stats[name] = st;
    }
  }
  return out;
}

}  // namespace agtrack
