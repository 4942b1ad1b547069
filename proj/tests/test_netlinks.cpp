#include "doctest.h"

#include "agtrack/netlinks.hpp"

using namespace agtrack;

TEST_CASE("latency formula arithmetic") {
  LinkParams lan{1e9, 5e-9, 2e-4};
  CHECK(link_latency(lan, 0.0, 100.0) == doctest::Approx(2.0005e-4));

  LinkParams lte{2e7, 0.0, 0.01};
  CHECK(link_latency(lte, 8e6, 0.0) == doctest::Approx(0.41));
}

TEST_CASE("latency is monotone in payload and distance") {
  LinkSet links;
  for (LinkKind kind : {LinkKind::UavLte, LinkKind::CameraLan, LinkKind::CameraWifi}) {
    double base = link_latency(links, kind, 1e6, 100.0);
    CHECK(link_latency(links, kind, 2e6, 100.0) > base);
    CHECK(link_latency(links, kind, 1e6, 200.0) >= base);
  }
}

TEST_CASE("default parameters order the three layers") {
  LinkSet links;
  for (double payload : {0.0, 1e5, 1e7}) {
    for (double dist : {0.0, 50.0, 500.0}) {
      double lan = link_latency(links, LinkKind::CameraLan, payload, dist);
      double wifi = link_latency(links, LinkKind::CameraWifi, payload, dist);
      double lte = link_latency(links, LinkKind::UavLte, payload, dist);
      CHECK(lan <= wifi);
      CHECK(wifi <= lte);
    }
  }
}

TEST_CASE("transmit energy") {
  RadioEnergyParams radio;
  radio.power = {1.0, 0.0, 0.5};
  CHECK(tx_energy(LinkKind::UavLte, 0.0, radio) == 0.0);
  CHECK(tx_energy(LinkKind::UavLte, 0.41, radio) == doctest::Approx(0.41));
  // wired LAN senders consume nothing
  CHECK(tx_energy(LinkKind::CameraLan, 123.0, radio) == 0.0);
  // linear in duration
  CHECK(tx_energy(LinkKind::CameraWifi, 4.0, radio) ==
        doctest::Approx(2 * tx_energy(LinkKind::CameraWifi, 2.0, radio)));
}
