#include "agtrack/netlinks.hpp"

namespace agtrack {

double link_latency(const LinkParams& params, double payload_bits,
                    double distance_m) {
  if (payload_bits < 0) throw std::invalid_argument("negative payload");
  if (distance_m < 0) throw std::invalid_argument("negative distance");
  if (params.rate <= 0) throw std::invalid_argument("rate must be positive");
  return params.overhead + distance_m * params.propagation +
         payload_bits / params.rate;
}

double tx_duration(const LinkParams& params, double payload_bits) {
  if (payload_bits < 0) throw std::invalid_argument("negative payload");
  return params.overhead + payload_bits / params.rate;
}

double tx_energy(LinkKind kind, double duration_s,
                 const RadioEnergyParams& radio) {
  if (duration_s < 0) throw std::invalid_argument("negative duration");
  return radio.power_for(kind) * duration_s;
}

}  // namespace agtrack
