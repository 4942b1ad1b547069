#pragma once

// Deterministic single-threaded discrete-event engine. One engine owns one
// episode; ordering key is (time, insertion seq) so equal-time events fire
// in insertion order.

#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace agtrack {

enum class EventKind { EntityStep, MessageArrival, TaskComplete, Timer };

const char* to_string(EventKind kind);

struct TraceRecord {
  double time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::Timer;
  std::string summary;
};

// Named-substream RNG: each entity gets its own generator derived from the
// run seed, so adding an entity does not perturb other entities' draws.
class RngStreams {
 public:
  explicit RngStreams(std::uint64_t seed) : seed_(seed) {}

  std::mt19937_64& stream(std::string_view name);
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::unordered_map<std::string, std::mt19937_64> streams_;
};

class Engine {
 public:
  explicit Engine(std::uint64_t seed) : rng_(seed) {}

  double now() const { return now_; }

  // Throws std::invalid_argument on past scheduling (time < now).
  void schedule(double time, EventKind kind, std::string summary,
                std::function<void(Engine&)> fire);

  // Dispatches every event with time <= t_end in (time, seq) order, then
  // advances the clock to t_end. Returns the records dispatched by this call.
  std::vector<TraceRecord> run_until(double t_end);

  std::size_t pending() const { return queue_.size(); }
  std::uint64_t dispatched() const { return dispatched_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }
  std::mt19937_64& rng(std::string_view name) { return rng_.stream(name); }

  // Newline-delimited JSON, one event per line.
  std::string trace_ndjson() const;

 private:
  struct Pending {
    double time;
    std::uint64_t seq;
    EventKind kind;
    std::string summary;
    std::function<void(Engine&)> fire;
    bool operator>(const Pending& o) const {
      if (time != o.time) return time > o.time;
      return seq > o.seq;
    }
  };

  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t dispatched_ = 0;
  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
  std::vector<TraceRecord> trace_;
  RngStreams rng_;
};

}  // namespace agtrack
