#include "crossfire/pathloss.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "crossfire/errors.hpp"

namespace crossfire {

namespace {

void guard(double distance, double min_separation) {
  if (!(distance > 0.0) || distance < min_separation) {
    throw SingularityError(fmt::format(
        "path loss singular: separation {:.6g} m below guard {:.6g} m", distance, min_separation));
  }
}

}  // namespace

double pathloss_los(double x, double x_rx, const ChannelParams& p, double min_separation) {
  const double d = std::abs(x_rx - x);
  guard(d, min_separation);
  return p.a_los * std::pow(d, -p.alpha);
}

double pathloss_cross(double y, double x_rx, const ChannelParams& p, double min_separation) {
  const double ay = std::abs(y);
  const double ax = std::abs(x_rx);
  if (std::min(ay, ax) > p.delta) return p.a_nlos * std::pow(ay * ax, -p.alpha);
  const double d = ay + ax;
  guard(d, min_separation);
  return p.a_los * std::pow(d, -p.alpha);
}

double pathloss(const RoadPosition& tx, const RoadPosition& rx, const ChannelParams& p,
                double min_separation) {
  if (rx.road() != Road::kHorizontal) throw DomainError("pathloss: RX must be on the horizontal road");
  if (tx.road() == Road::kHorizontal) return pathloss_los(tx.x(), rx.x(), p, min_separation);
  return pathloss_cross(tx.y(), rx.x(), p, min_separation);
}

}  // namespace crossfire
