#pragma once

#include <string_view>

namespace crossfire {

enum class Road { kHorizontal, kVertical };

// A point on one of the two crossing roads. The intersection sits at the
// origin; x * y == 0 holds for every instance.
class RoadPosition {
 public:
  static RoadPosition horizontal(double x);
  static RoadPosition vertical(double y);
  static RoadPosition on(Road road, double offset);
  // Throws DomainError unless exactly one coordinate is zero (or both).
  static RoadPosition from_xy(double x, double y);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  // The intersection itself reports kHorizontal.
  Road road() const noexcept { return y_ == 0.0 ? Road::kHorizontal : Road::kVertical; }
  double offset() const noexcept { return y_ == 0.0 ? x_ : y_; }

  friend bool operator==(const RoadPosition&, const RoadPosition&) = default;

 private:
  RoadPosition(double x, double y) : x_(x), y_(y) {}

  double x_;
  double y_;
};

enum class LinkClass { kLos, kWlos, kNlos };

std::string_view to_string(LinkClass c);
std::string_view to_string(Road r);

double manhattan(const RoadPosition& a, const RoadPosition& b);

// TX at Manhattan separation d from an RX on the negative horizontal axis:
// moves along the horizontal road toward the intersection, then up the
// vertical road.
RoadPosition tx_from_manhattan(double d, const RoadPosition& rx);

LinkClass classify_link(const RoadPosition& tx, const RoadPosition& rx, double delta);

}  // namespace crossfire
