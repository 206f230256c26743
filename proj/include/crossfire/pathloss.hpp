#pragma once

#include "crossfire/geometry.hpp"
#include "crossfire/params.hpp"

namespace crossfire {

// Separations below this raise SingularityError instead of returning an
// unbounded gain. Pass 0 to reject only exact coincidence.
inline constexpr double kDefaultMinSeparation = 0.1;

// Same-road link: a_los * |x_rx - x|^-alpha.
double pathloss_los(double x, double x_rx, const ChannelParams& p,
                    double min_separation = kDefaultMinSeparation);

// Interferer/TX at (0, y), RX at (x_rx, 0):
//   min(|y|, |x_rx|) >  delta : a_nlos * (|y| |x_rx|)^-alpha
//   min(|y|, |x_rx|) <= delta : a_los * (|y| + |x_rx|)^-alpha
double pathloss_cross(double y, double x_rx, const ChannelParams& p,
                      double min_separation = kDefaultMinSeparation);

// Dispatches on the TX road. RX must be on the horizontal road.
double pathloss(const RoadPosition& tx, const RoadPosition& rx, const ChannelParams& p,
                double min_separation = kDefaultMinSeparation);

}  // namespace crossfire
