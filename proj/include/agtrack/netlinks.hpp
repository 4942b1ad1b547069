#pragma once

// Latency and energy models for the three communication layers:
// UAV<->ground over LTE, camera<->camera over wired LAN, camera<->cluster
// over Wi-Fi. Links are lossless; delay is overhead + propagation + serialization.

#include <array>
#include <stdexcept>

namespace agtrack {

enum class LinkKind { UavLte = 0, CameraLan = 1, CameraWifi = 2 };

struct LinkParams {
  double rate = 1.0;        // bits/s
  double propagation = 0.0; // s/m
  double overhead = 0.0;    // s per message
};

struct RadioEnergyParams {
  // Transmit power in watts per link kind; wired senders carry 0.
  std::array<double, 3> power{0.0, 0.0, 0.0};

  double power_for(LinkKind kind) const {
    return power[static_cast<int>(kind)];
  }
};

struct LinkSet {
  LinkParams uav_lte{20e6, 5e-9, 10e-3};
  LinkParams camera_lan{1e9, 5e-9, 0.2e-3};
  LinkParams camera_wifi{50e6, 5e-9, 2e-3};
  RadioEnergyParams radio;

  const LinkParams& params(LinkKind kind) const {
    switch (kind) {
      case LinkKind::UavLte: return uav_lte;
      case LinkKind::CameraLan: return camera_lan;
      case LinkKind::CameraWifi: return camera_wifi;
    }
    throw std::invalid_argument("unknown link kind");
  }
};

double link_latency(const LinkParams& params, double payload_bits,
                    double distance_m);

inline double link_latency(const LinkSet& links, LinkKind kind,
                           double payload_bits, double distance_m) {
  return link_latency(links.params(kind), payload_bits, distance_m);
}

// Time the sender's radio is busy (no propagation term); used for energy.
double tx_duration(const LinkParams& params, double payload_bits);

double tx_energy(LinkKind kind, double duration_s,
                 const RadioEnergyParams& radio);

}  // namespace agtrack
