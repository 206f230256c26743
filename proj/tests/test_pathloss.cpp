#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "crossfire/errors.hpp"
#include "crossfire/pathloss.hpp"
#include "support.hpp"

using namespace crossfire;
using crossfire::testing::reference_channel;

TEST_CASE("LOS path loss") {
  const ChannelParams p = reference_channel();
  CHECK(pathloss_los(0.0, 1.0, p) == doctest::Approx(p.a_los).epsilon(1e-15));
  const ChannelParams unit{2.0, 1.0, 0.5, 15.0, 1.0, 0.0};
  CHECK(pathloss_los(0.0, 10.0, unit) == doctest::Approx(0.01).epsilon(1e-15));
  // mpmath: a_los * 50^-1.68
  CHECK(pathloss_los(-50.0, 0.0, p) == doctest::Approx(1.0957977206104958044e-05).epsilon(1e-13));
  CHECK_THROWS_AS(pathloss_los(-50.0, -50.0, p), SingularityError);
  CHECK_THROWS_AS(pathloss_los(-50.0, -50.05, p), SingularityError);
  CHECK_NOTHROW(pathloss_los(-50.0, -50.05, p, 0.0));
  CHECK_THROWS_AS(pathloss_los(-50.0, -50.0, p, 0.0), SingularityError);
}

TEST_CASE("LOS symmetry and distance scaling") {
  const ChannelParams p = reference_channel();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng);
    if (std::abs(a - b) < 1.0) continue;
    CHECK(pathloss_los(a, b, p) == pathloss_los(b, a, p));
    const double near = pathloss_los(0.0, std::abs(a - b), p);
    const double far = pathloss_los(0.0, 2.0 * std::abs(a - b), p);
    CHECK(far / near == doctest::Approx(std::pow(2.0, -p.alpha)).epsilon(1e-12));
  }
}

TEST_CASE("cross-road branches") {
  const ChannelParams p = reference_channel();
  // boundary |y| = delta is WLOS
  CHECK(pathloss_cross(15.0, -50.0, p) == doctest::Approx(p.a_los * std::pow(65.0, -p.alpha)));
  CHECK(pathloss_cross(-70.0, -50.0, p) ==
        doctest::Approx(p.a_nlos * std::pow(3500.0, -p.alpha)).epsilon(1e-14));
  CHECK(pathloss_cross(0.0, -50.0, p) == doctest::Approx(pathloss_los(0.0, -50.0, p)).epsilon(1e-15));
  // RX near the intersection keeps every cross-road link WLOS
  CHECK(pathloss_cross(500.0, -5.0, p) == doctest::Approx(p.a_los * std::pow(505.0, -p.alpha)));
  CHECK_THROWS_AS(pathloss_cross(0.0, 0.0, p), SingularityError);
}

TEST_CASE("WLOS to NLOS jump is downward at the break point") {
  for (double r : {1e-4, 1e-3, 0.1, 0.5, 0.99}) {
    const ChannelParams p = reference_channel(r);
    for (double x_rx : {-20.0, -50.0, -200.0}) {
      const double wlos = pathloss_cross(p.delta, x_rx, p);
      const double nlos = pathloss_cross(std::nextafter(p.delta, 100.0), x_rx, p);
      CHECK(nlos < wlos);
    }
  }
}

TEST_CASE("dispatch by TX road") {
  const ChannelParams p = reference_channel();
  const auto rx = RoadPosition::horizontal(-50.0);
  CHECK(pathloss(RoadPosition::horizontal(-30.0), rx, p) == pathloss_los(-30.0, -50.0, p));
  CHECK(pathloss(RoadPosition::vertical(10.0), rx, p) == p.a_los * std::pow(60.0, -p.alpha));
  CHECK(pathloss(RoadPosition::vertical(70.0), rx, p) == p.a_nlos * std::pow(3500.0, -p.alpha));
  CHECK_THROWS_AS(pathloss(rx, RoadPosition::vertical(3.0), p), DomainError);
}
