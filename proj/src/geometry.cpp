#include "crossfire/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "crossfire/errors.hpp"

namespace crossfire {

RoadPosition RoadPosition::horizontal(double x) {
  if (!std::isfinite(x)) throw DomainError("road offset must be finite");
  return RoadPosition(x, 0.0);
}

RoadPosition RoadPosition::vertical(double y) {
  if (!std::isfinite(y)) throw DomainError("road offset must be finite");
  // (0, 0) is stored as the horizontal representation of the intersection.
  return RoadPosition(0.0, y == 0.0 ? 0.0 : y);
}

RoadPosition RoadPosition::on(Road road, double offset) {
  return road == Road::kHorizontal ? horizontal(offset) : vertical(offset);
}

RoadPosition RoadPosition::from_xy(double x, double y) {
  if (x != 0.0 && y != 0.0) throw DomainError("position is off both roads (x*y != 0)");
  return x != 0.0 ? horizontal(x) : vertical(y);
}

std::string_view to_string(LinkClass c) {
  switch (c) {
    case LinkClass::kLos:
      return "LOS";
    case LinkClass::kWlos:
      return "WLOS";
    case LinkClass::kNlos:
      return "NLOS";
  }
  return "?";
}

std::string_view to_string(Road r) {
  return r == Road::kHorizontal ? "horizontal" : "vertical";
}

double manhattan(const RoadPosition& a, const RoadPosition& b) {
  return std::abs(a.x() - b.x()) + std::abs(a.y() - b.y());
}

RoadPosition tx_from_manhattan(double d, const RoadPosition& rx) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("Manhattan separation must be > 0");
  if (rx.road() != Road::kHorizontal || !(rx.x() < 0.0)) {
    throw DomainError("RX must sit on the negative horizontal road");
  }
  const double to_intersection = -rx.x();
  if (d <= to_intersection) return RoadPosition::horizontal(rx.x() + d);
  return RoadPosition::vertical(d - to_intersection);
}

LinkClass classify_link(const RoadPosition& tx, const RoadPosition& rx, double delta) {
  if (tx == rx) throw DomainError("classify_link: TX and RX coincide");
  if (rx.road() != Road::kHorizontal) throw DomainError("classify_link: RX must be on the horizontal road");
  if (tx.road() == Road::kHorizontal) return LinkClass::kLos;
  return std::min(std::abs(tx.y()), std::abs(rx.x())) <= delta ? LinkClass::kWlos : LinkClass::kNlos;
}

}  // namespace crossfire
