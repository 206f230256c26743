#pragma once

// Test-only helpers. The kernel oracle here integrates 1/(1+u^alpha)
// numerically and never touches the series evaluation it is checked against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "crossfire/analytic.hpp"
#include "crossfire/params.hpp"

namespace crossfire::testing {

// int_a^b du / (1 + u^alpha), 0 <= a <= b. tanh-sinh handles the u^alpha
// cusp at the origin; Gauss-Kronrod takes the smooth remainder.
inline double quad_kernel(double alpha, double a, double b) {
  auto f = [alpha](double u) { return 1.0 / (1.0 + std::pow(u, alpha)); };
  double total = 0.0;
  const double mid = std::min(b, 1.0);
  if (a < mid) {
    static boost::math::quadrature::tanh_sinh<double> ts;
    total += ts.integrate(f, a, mid, 1e-13);
  }
  double lo = std::max(a, 1.0);
  while (lo < b) {
    const double hi = std::min(b, lo * 4.0);
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-13);
    lo = hi;
  }
  return total;
}

inline double quad_kernel_to_infinity(double alpha) {
  auto f = [alpha](double u) { return 1.0 / (1.0 + std::pow(u, alpha)); };
  static boost::math::quadrature::exp_sinh<double> es;
  return quad_kernel(alpha, 0.0, 1.0) + es.integrate(f, 1.0, std::numeric_limits<double>::infinity(), 1e-13);
}

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

// Reference parameter set used across the unit tests (r = 1e-3).
inline ChannelParams reference_channel(double r = 1e-3) {
  return build_channel_params(reference_defaults(r));
}

// Closed-form vs quadrature grid: every (alpha, |x_rx|, R) cell crossed with
// LOS, WLOS and far cross-road TX placements, RX on either side of the
// intersection, randomized Aloha load and NLOS severity. 270 scenarios.
inline std::vector<Scenario> oracle_grid(std::uint64_t seed = 2024) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> load(0.02, 1.0);
  std::uniform_real_distribution<double> log_r(-4.0, -0.5);
  std::vector<Scenario> out;
  int k = 0;
  for (double alpha : {1.3, 1.68, 2.0, 2.5, 3.0}) {
    for (double rx_norm : {0.0, 5.0, 15.0, 50.0, 200.0, 1200.0}) {
      for (double radius : {15.0, 100.0, 1000.0}) {
        SystemDefaults d = reference_defaults(std::pow(10.0, log_r(rng)));
        d.alpha = alpha;
        const double sign = (k++ % 2 == 0) ? -1.0 : 1.0;
        const RoadPosition rx = RoadPosition::horizontal(sign * rx_norm);
        for (const RoadPosition& tx :
             {RoadPosition::horizontal(sign * rx_norm - sign * 20.0), RoadPosition::vertical(10.0),
              RoadPosition::vertical(-70.0)}) {
          Scenario s;
          s.params = build_channel_params(d);
          s.rx = rx;
          s.tx = tx;
          s.lambda_x = 0.01;
          s.lambda_y = 0.01;
          s.r_x = radius;
          s.r_y = radius;
          s.p_i = load(rng);
          out.push_back(s);
        }
      }
    }
  }
  return out;
}

}  // namespace crossfire::testing
