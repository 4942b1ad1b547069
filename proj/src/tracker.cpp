#include "agtrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace agtrack {

const char* to_string(TrackingCase c) {
  switch (c) {
    case TrackingCase::Case1Tracking: return "case1";
    case TrackingCase::Case2AboutToLose: return "case2";
    case TrackingCase::Case3Lost: return "case3";
  }
  return "unknown";
}

TrackingCase classify_state(std::optional<double> last_seen_time, double now,
                            double tau_occ, double tau_lost) {
  double gap = last_seen_time ? now - *last_seen_time : now;
  if (last_seen_time && gap <= tau_occ) return TrackingCase::Case1Tracking;
  if (gap <= tau_lost) {
    return last_seen_time && gap <= tau_occ ? TrackingCase::Case1Tracking
                                            : TrackingCase::Case2AboutToLose;
  }
  return TrackingCase::Case3Lost;
}

namespace {

class EpisodeRunner {
 public:
  EpisodeRunner(const Scenario& sc, const StrategyToggles& toggles,
                std::uint64_t seed)
      : sc_(sc), toggles_(toggles), engine_(seed), cameras_(sc.cameras) {
    for (const Obstacle& o : sc.obstacles) {
      if (o.blocks_aerial) aerial_obstacles_.push_back(o);
    }
    target_.edge = sc.target.start_edge;
    target_.forward = true;
    target_.progress = 0.0;
    target_.speed = sc.target.speed;
    uav_.position = sc.uav.position;
    uav_.max_speed = sc.uav.max_speed;
    uav_.battery = uav_.battery_initial = sc.uav.battery_s;
    goal_ = uav_.position;
  }

  EpisodeResult run() {
    double duration = sc_.episode.duration;
    if (duration > 0) {
      engine_.schedule(0.0, EventKind::EntityStep, "tick",
                       [this](Engine&) { tick(); });
      if (toggles_.mra != MraMode::Off && !sc_.servers.empty()) {
        engine_.schedule(0.0, EventKind::Timer, "recognition",
                         [this](Engine&) { recognition(); });
      }
      engine_.schedule(sc_.episode.camera_interval, EventKind::Timer,
                       "camera-sweep", [this](Engine&) { camera_sweep(); });
      engine_.run_until(duration);
    }

    EpisodeResult result;
    result.metrics = finalize(duration);
    result.trace = engine_.trace();
    return result;
  }

 private:
  Vec2 target_position() const { return target_.position(sc_.roads); }

  bool uav_sees_target() const {
    Vec2 tp = target_position();
    if (distance(uav_.position, tp) > sc_.uav.sense_radius) return false;
    return line_of_sight(uav_.position, tp, aerial_obstacles_);
  }

  void tick() {
    double now = engine_.now();
    double dt = std::min(sc_.episode.tick, sc_.episode.duration - now);

    if (uav_sees_target()) {
      last_seen_time_ = now;
      last_seen_pos_ = target_position();
      if (toggles_.mra == MraMode::Off) goal_ = last_seen_pos_;
    }
    update_case(now);

    case_seconds_[static_cast<int>(case_)] += dt;

    step_target(target_, sc_.roads, dt, engine_.rng("target"));
    step_uav(uav_, goal_, dt);

    if (now + dt < sc_.episode.duration) {
      engine_.schedule(now + dt, EventKind::EntityStep, "tick",
                       [this](Engine&) { tick(); });
    }
  }

  void update_case(double now) {
    TrackingCase raw = classify_state(last_seen_time_, now, sc_.params.tau_occ,
                                      sc_.params.tau_lost);
    if (raw == case_) return;
    if (case_ == TrackingCase::Case1Tracking) {
      // losing the target always passes through case 2
      enter_case2(now);
      if (raw == TrackingCase::Case3Lost) enter_case3(now);
    } else if (raw == TrackingCase::Case1Tracking) {
      reacquire(now);
    } else if (case_ == TrackingCase::Case2AboutToLose &&
               raw == TrackingCase::Case3Lost) {
      enter_case3(now);
    }
    // case3 -> case2 cannot occur: the visibility gap only grows until reset
  }

  void enter_case2(double now) {
    case_ = TrackingCase::Case2AboutToLose;
    loss_start_ = now;
    ++loss_events_;
    log(EventKind::Timer, "enter-case2");
    if (last_seen_time_) goal_ = last_seen_pos_;
    if (toggles_.asrt) run_asrt(now);
  }

  void enter_case3(double now) {
    case_ = TrackingCase::Case3Lost;
    log(EventKind::Timer, "enter-case3");
    if (toggles_.case3 == Case3Route::Off) return;
    std::vector<int> candidates;
    for (const CameraState& cam : cameras_.cameras) {
      if (!cam.activated &&
          distance(cam.position, last_seen_pos_) <= sc_.params.case3_radius) {
        candidates.push_back(cam.id);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    if (!candidates.empty()) activate(candidates, now);
  }

  void reacquire(double now) {
    case_ = TrackingCase::Case1Tracking;
    ++reacquired_;
    reacquisition_times_.push_back(now - loss_start_);
    log(EventKind::Timer, "reacquired");
  }

  void run_asrt(double now) {
    double elapsed = last_seen_time_ ? now - *last_seen_time_ : now;
    double d = distance(uav_.position, last_seen_pos_);
    double d_request = link_latency(sc_.links, LinkKind::UavLte,
                                    sc_.params.activation_bits, d);
    double d_response = link_latency(sc_.links, LinkKind::UavLte, 1e5, d);
    RingRegion region = ring_region(last_seen_pos_, sc_.target.v_max,
                                    sc_.target.v_min, elapsed, d_request,
                                    d_response);
    std::vector<int> candidates = candidate_cameras(cameras_, region);
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                    [this](int id) {
                                      return cameras_
                                          .cameras[cameras_.index_of(id)]
                                          .activated;
                                    }),
                     candidates.end());
    if (!candidates.empty()) activate(candidates, now);
  }

  // Plan key cameras and schedule per-camera activation events.
  void activate(const std::vector<int>& candidates, double now) {
    ActivationPlan plan;
    try {
      plan = plan_activation(cameras_, candidates, uav_.position,
                             sc_.params.k_max, sc_.links,
                             sc_.params.activation_bits);
    } catch (const std::invalid_argument&) {
      // LAN cannot reach every candidate: contact each directly
      plan.keys = candidates;
      for (int id : candidates) {
        int idx = cameras_.index_of(id);
        double lat = link_latency(
            sc_.links, LinkKind::UavLte, sc_.params.activation_bits,
            distance(uav_.position, cameras_.cameras[idx].position));
        plan.activation_time[id] = lat;
        plan.total = std::max(plan.total, lat);
      }
    }
    radio_joules_ += plan.keys.size() *
                     tx_energy(LinkKind::UavLte,
                               tx_duration(sc_.links.uav_lte,
                                           sc_.params.activation_bits),
                               sc_.links.radio);
    std::ostringstream msg;
    msg << "activation-plan keys=" << plan.keys.size()
        << " candidates=" << candidates.size() << " total=" << plan.total;
    log(EventKind::MessageArrival, msg.str());
    for (const auto& [id, offset] : plan.activation_time) {
      engine_.schedule(now + offset, EventKind::MessageArrival,
                       "camera-activate id=" + std::to_string(id),
                       [this, id](Engine& e) {
                         CameraState& cam =
                             cameras_.cameras[cameras_.index_of(id)];
                         if (!cam.activated) {
                           cam.activated = true;
                           cam.activation_time = e.now();
                         }
                       });
    }
  }

  // Case-1 pipeline: place the stream dag, charge the tuple latency, and
  // update the UAV goal with the (stale) recognition result on completion.
  void recognition() {
    double now = engine_.now();
    if (case_ == TrackingCase::Case1Tracking && !uav_.grounded) {
      Placement placement;
      bool placed = true;
      try {
        if (toggles_.mra == MraMode::Mra) {
          Vec2 vel{0, 0};
          double d = distance(uav_.position, goal_);
          if (d > 1e-9) {
            vel = (uav_.max_speed / d) * (goal_ - uav_.position);
          }
          UavForecast forecast = UavForecast::straight_line(
              uav_.position, vel, sc_.params.forecast_horizon,
              sc_.params.forecast_samples);
          placement = mra_place(sc_.dag, sc_.servers, forecast, sc_.links);
        } else if (toggles_.mra == MraMode::Ras) {
          placement = baseline_place(PlacementBaseline::Ras, sc_.dag,
                                     sc_.servers, uav_.position, sc_.links);
        } else {
          placement = baseline_place(PlacementBaseline::Default, sc_.dag,
                                     sc_.servers, uav_.position, sc_.links);
        }
      } catch (const std::invalid_argument&) {
        placed = false;  // no feasible placement this round
      }
      if (placed) {
        double latency = estimate_tuple_time(sc_.dag, placement, sc_.servers,
                                             uav_.position, sc_.links);
        tuple_latencies_.push_back(latency);
        radio_joules_ += tx_energy(
            LinkKind::UavLte,
            tx_duration(sc_.links.uav_lte, sc_.dag.uplink_bits),
            sc_.links.radio);
        Vec2 captured = target_position();
        engine_.schedule(now + latency, EventKind::TaskComplete,
                         "recognition-complete",
                         [this, captured](Engine&) {
                           if (case_ == TrackingCase::Case1Tracking) {
                             goal_ = captured;
                           }
                         });
      }
    }
    double next = now + sc_.episode.recognition_interval;
    if (next < sc_.episode.duration) {
      engine_.schedule(next, EventKind::Timer, "recognition",
                       [this](Engine&) { recognition(); });
    }
  }

  void camera_sweep() {
    double now = engine_.now();
    if (case_ != TrackingCase::Case1Tracking) {
      Vec2 tp = target_position();
      std::vector<int> covering;
      for (const CameraState& cam : cameras_.cameras) {
        if (cam.activated && *cam.activation_time <= now &&
            camera_covers(cam, tp, sc_.obstacles)) {
          covering.push_back(cam.id);
        }
      }
      std::sort(covering.begin(), covering.end());
      if (!covering.empty()) route_camera_tasks(covering, now);
    }
    double next = now + sc_.episode.camera_interval;
    if (next < sc_.episode.duration) {
      engine_.schedule(next, EventKind::Timer, "camera-sweep",
                       [this](Engine&) { camera_sweep(); });
    }
  }

  void route_camera_tasks(const std::vector<int>& camera_ids, double now) {
    std::vector<VideoTask> tasks;
    for (int id : camera_ids) {
      VideoTask t;
      t.data_bits = sc_.params.recognition_bits;
      t.cycles = sc_.params.recognition_cycles;
      t.origin_camera = id;
      t.release_time = now;
      tasks.push_back(t);
    }

    std::vector<double> latencies(tasks.size(), 0.0);
    if (toggles_.case3 == Case3Route::Qoe && !sc_.terminals.empty()) {
      OffloadDecision decision = joint_allocate(tasks, sc_.terminals,
                                                sc_.edge_server, sc_.bandwidth,
                                                sc_.weights);
      total_qoe_cost_ += decision.total_cost;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        const TerminalProfile& term =
            sc_.terminals.size() == 1 ? sc_.terminals[0] : sc_.terminals[i];
        latencies[i] = task_latency(tasks[i], decision.sides[i], term,
                                    sc_.edge_server, decision.rates[i]);
      }
    } else if (toggles_.case3 == Case3Route::Cacat && !sc_.cacat_nodes.empty()) {
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        SubtaskBatch batch = split_task(tasks[i].origin_camera,
                                        sc_.params.frames_per_task,
                                        sc_.params.chunk);
        auto& rng = engine_.rng("cacat");
        auto realization = realize_availability(sc_.cacat_nodes,
                                                sc_.params.max_rounds, rng);
        AssignmentSchedule sched = assign_online(
            AssignmentPolicy::PaOpt, batch, sc_.cacat_nodes,
            sc_.params.max_rounds, realization, sc_.effective_penalty(), rng);
        double offline = offline_opt(batch, sc_.cacat_nodes,
                                     sc_.params.max_rounds, realization,
                                     sc_.effective_penalty());
        if (offline > 0) {
          competition_ratios_.push_back(
              competition_ratio(sched.total_cost, offline));
        }
        int rounds = sc_.params.max_rounds;
        if (sched.complete) {
          rounds = *std::max_element(sched.completion_round.begin(),
                                     sched.completion_round.end());
        }
        latencies[i] = rounds * sc_.params.round_duration;
      }
    } else {
      return;  // no routing available
    }

    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      int cam_id = tasks[i].origin_camera;
      auto& rng = engine_.rng("cam" + std::to_string(cam_id));
      if (uni(rng) >= sc_.params.p_detect) continue;
      Vec2 cam_pos =
          cameras_.cameras[cameras_.index_of(cam_id)].position;
      engine_.schedule(now + latencies[i], EventKind::TaskComplete,
                       "detection cam=" + std::to_string(cam_id),
                       [this, cam_id, cam_pos](Engine& e) {
                         on_detection(cam_id, cam_pos, e.now());
                       });
    }
  }

  void on_detection(int cam_id, Vec2 cam_pos, double now) {
    // earlier detection wins within a step; ties go to the lower camera id
    if (last_detection_time_ == now && cam_id > last_detection_cam_) return;
    last_detection_time_ = now;
    last_detection_cam_ = cam_id;
    goal_ = cam_pos;  // recorded even while grounded; motion is gated elsewhere
    log(EventKind::TaskComplete, "uav-redirect cam=" + std::to_string(cam_id));
  }

  void log(EventKind kind, std::string summary) {
    engine_.schedule(engine_.now(), kind, std::move(summary), nullptr);
  }

  EpisodeMetrics finalize(double duration) {
    EpisodeMetrics m;
    if (duration <= 0) {
      m.tracked_fraction = 1.0;
      return m;
    }
    m.tracked_fraction =
        std::clamp(case_seconds_[0] / duration, 0.0, 1.0);
    m.loss_events = loss_events_;
    m.reacquired = reacquired_;
    if (!reacquisition_times_.empty()) {
      double sum = 0.0;
      for (double t : reacquisition_times_) sum += t;
      m.mean_reacquisition_time = sum / reacquisition_times_.size();
    }
    m.case3_seconds = case_seconds_[2];
    m.flight_seconds = uav_.battery_initial - uav_.battery;
    m.radio_joules = radio_joules_;
    if (!tuple_latencies_.empty()) {
      double sum = 0.0;
      for (double t : tuple_latencies_) sum += t;
      m.mean_tuple_latency = sum / tuple_latencies_.size();
    }
    m.total_qoe_cost = total_qoe_cost_;
    m.competition_ratios = competition_ratios_;
    return m;
  }

  const Scenario& sc_;
  const StrategyToggles& toggles_;
  Engine engine_;

  std::vector<Obstacle> aerial_obstacles_;
  TargetState target_;
  UavState uav_;
  CameraGraph cameras_;
  Vec2 goal_;

  TrackingCase case_ = TrackingCase::Case1Tracking;
  std::optional<double> last_seen_time_;
  Vec2 last_seen_pos_;
  double loss_start_ = 0.0;
  double case_seconds_[3] = {0.0, 0.0, 0.0};

  int loss_events_ = 0;
  int reacquired_ = 0;
  std::vector<double> reacquisition_times_;
  std::vector<double> tuple_latencies_;
  double total_qoe_cost_ = 0.0;
  double radio_joules_ = 0.0;
  std::vector<double> competition_ratios_;
  double last_detection_time_ = -1.0;
  int last_detection_cam_ = -1;
};

}  // namespace

EpisodeResult run_episode(const Scenario& scenario,
                          const StrategyToggles& toggles, std::uint64_t seed) {
  EpisodeRunner runner(scenario, toggles, seed);
  return runner.run();
}

}  // namespace agtrack
