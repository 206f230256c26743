#pragma once

#include "crossfire/geometry.hpp"
#include "crossfire/params.hpp"
#include "crossfire/pathloss.hpp"

namespace crossfire {

// Full evaluation context for one TX/RX pair under Aloha-thinned PPP
// interference on both roads.
struct Scenario {
  RoadPosition tx = RoadPosition::horizontal(0.0);
  RoadPosition rx = RoadPosition::horizontal(-50.0);
  ChannelParams params;
  double lambda_x = 0.0;  // vehicles per meter, horizontal road
  double lambda_y = 0.0;  // vehicles per meter, vertical road
  double r_x = 0.0;       // interferers on |x| <= r_x
  double r_y = 0.0;       // interferers on |y| <= r_y
  double p_i = 0.0;       // Aloha transmit probability
  double min_separation = kDefaultMinSeparation;
};

// Throws ValidationError naming the violated invariant.
void validate(const Scenario& s);

struct SuccessBreakdown {
  double p_noint = 1.0;
  double p_x = 1.0;
  double p_y = 1.0;
  double p_c = 1.0;
  double zeta = 0.0;       // (a_los * beta / link_gain)^(1/alpha)
  double kappa = 0.0;      // (a_los / a_nlos)^(1/alpha) * |x_rx|
  double link_gain = 0.0;  // path loss of the wanted link
  double x_factor = 0.0;
  double y_factor = 0.0;
  // Raw log-probabilities, kept even when the probability underflows to 0.
  double log_p_noint = 0.0;
  double log_p_x = 0.0;
  double log_p_y = 0.0;
  LinkClass link_class = LinkClass::kLos;
};

double link_gain(const Scenario& s);
double characteristic_length(const ChannelParams& p, double link_gain);
double nlos_scale(const ChannelParams& p, double rx_norm);

double p_noint(const Scenario& s);

// Horizontal-road factor X(R_x) for an RX at distance rx_norm from the
// intersection. rx_norm == r_x is treated as inside (the two forms agree).
double x_factor(double alpha, double rx_norm, double r_x, double zeta);
double x_factor(const Scenario& s);

// Vertical-road factor Y(R_y), splitting the road at the break point when
// the RX is farther than delta from the intersection.
double y_factor(double alpha, double rx_norm, double r_y, double delta, double zeta, double kappa);
double y_factor(const Scenario& s);

SuccessBreakdown success_probability(const Scenario& s);

}  // namespace crossfire
