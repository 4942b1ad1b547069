#include "agtrack/sim.hpp"

#include <sstream>

#include "json.hpp"

namespace agtrack {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::EntityStep: return "entity-step";
    case EventKind::MessageArrival: return "message-arrival";
    case EventKind::TaskComplete: return "task-complete";
    case EventKind::Timer: return "timer";
  }
  return "unknown";
}

std::mt19937_64& RngStreams::stream(std::string_view name) {
  auto it = streams_.find(std::string(name));
  if (it == streams_.end()) {
    std::uint64_t sub = splitmix64(seed_ ^ splitmix64(fnv1a(name)));
    it = streams_.emplace(std::string(name), std::mt19937_64(sub)).first;
  }
  return it->second;
}

void Engine::schedule(double time, EventKind kind, std::string summary,
                      std::function<void(Engine&)> fire) {
  if (time < now_) {
    throw std::invalid_argument("schedule: event time " + std::to_string(time) +
                                " is before clock " + std::to_string(now_));
  }
  queue_.push(Pending{time, next_seq_++, kind, std::move(summary), std::move(fire)});
}

std::vector<TraceRecord> Engine::run_until(double t_end) {
  if (t_end < now_) {
    throw std::invalid_argument("run_until: t_end before clock");
  }
  std::vector<TraceRecord> dispatched;
  while (!queue_.empty() && queue_.top().time <= t_end) {
    Pending ev = queue_.top();
    queue_.pop();
    now_ = ev.time;
    TraceRecord rec{ev.time, ev.seq, ev.kind, ev.summary};
    trace_.push_back(rec);
    dispatched.push_back(rec);
    ++dispatched_;
    if (ev.fire) ev.fire(*this);
  }
  now_ = t_end;
  return dispatched;
}

std::string Engine::trace_ndjson() const {
  std::ostringstream out;
  for (const TraceRecord& r : trace_) {
    nlohmann::json j;
    j["time"] = r.time;
    j["seq"] = r.seq;
    j["kind"] = to_string(r.kind);
    j["summary"] = r.summary;
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace agtrack
