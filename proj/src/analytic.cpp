#include "crossfire/analytic.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "crossfire/errors.hpp"
#include "crossfire/hypergeom.hpp"

namespace crossfire {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

// exp() with subnormal results flushed to zero.
double probability_from_log(double log_p) {
  const double p = std::exp(log_p);
  return p < std::numeric_limits<double>::min() ? 0.0 : p;
}

}  // namespace

void validate(const Scenario& s) {
  validate(s.params);
  require(s.rx.road() == Road::kHorizontal, "rx must be on the horizontal road");
  require(!(s.tx == s.rx), "tx and rx must differ");
  require(std::isfinite(s.lambda_x) && s.lambda_x >= 0.0, "lambda_x must be >= 0");
  require(std::isfinite(s.lambda_y) && s.lambda_y >= 0.0, "lambda_y must be >= 0");
  require(s.p_i >= 0.0 && s.p_i <= 1.0, "p_i must lie in [0, 1]");
  require(std::isfinite(s.r_x) && std::isfinite(s.r_y), "interference bounds must be finite");
  require(std::min(s.r_x, s.r_y) >= s.params.delta,
          "interference bounds must satisfy min(r_x, r_y) >= delta");
  require(s.min_separation >= 0.0, "min_separation must be >= 0");
}

double link_gain(const Scenario& s) { return pathloss(s.tx, s.rx, s.params, s.min_separation); }

double characteristic_length(const ChannelParams& p, double link_gain) {
  return std::pow(p.a_los * p.beta / link_gain, 1.0 / p.alpha);
}

double nlos_scale(const ChannelParams& p, double rx_norm) {
  return std::pow(p.a_los / p.a_nlos, 1.0 / p.alpha) * rx_norm;
}

double p_noint(const Scenario& s) {
  validate(s);
  return std::exp(-s.params.beta * s.params.gamma0 / link_gain(s));
}

double x_factor(double alpha, double rx_norm, double r_x, double zeta) {
  if (rx_norm <= r_x) {
    return g_circ(alpha, (r_x + rx_norm) / zeta) + g_circ(alpha, (r_x - rx_norm) / zeta);
  }
  return g_circ_span(alpha, (rx_norm - r_x) / zeta, (rx_norm + r_x) / zeta);
}

double x_factor(const Scenario& s) {
  validate(s);
  const double zeta = characteristic_length(s.params, link_gain(s));
  return x_factor(s.params.alpha, std::abs(s.rx.x()), s.r_x, zeta);
}

double y_factor(double alpha, double rx_norm, double r_y, double delta, double zeta, double kappa) {
  if (rx_norm <= delta) return g_circ_span(alpha, rx_norm / zeta, (r_y + rx_norm) / zeta);
  // kappa vanishes only with rx_norm, which the branch above already took.
  assert(kappa > 0.0);
  return g_circ_span(alpha, rx_norm / zeta, (delta + rx_norm) / zeta) +
         g_circ_span(alpha, kappa * delta / zeta, kappa * r_y / zeta) / kappa;
}

double y_factor(const Scenario& s) {
  validate(s);
  const double zeta = characteristic_length(s.params, link_gain(s));
  const double rx_norm = std::abs(s.rx.x());
  return y_factor(s.params.alpha, rx_norm, s.r_y, s.params.delta, zeta,
                  nlos_scale(s.params, rx_norm));
}

SuccessBreakdown success_probability(const Scenario& s) {
  validate(s);
  const ChannelParams& p = s.params;
  const double rx_norm = std::abs(s.rx.x());

  SuccessBreakdown out;
  out.link_class = classify_link(s.tx, s.rx, p.delta);
  out.link_gain = link_gain(s);
  out.zeta = characteristic_length(p, out.link_gain);
  out.kappa = nlos_scale(p, rx_norm);
  out.x_factor = x_factor(p.alpha, rx_norm, s.r_x, out.zeta);
  out.y_factor = y_factor(p.alpha, rx_norm, s.r_y, p.delta, out.zeta, out.kappa);

  out.log_p_noint = -p.beta * p.gamma0 / out.link_gain;
  out.log_p_x = -s.p_i * s.lambda_x * out.zeta * out.x_factor;
  out.log_p_y = -2.0 * s.p_i * s.lambda_y * out.zeta * out.y_factor;

  out.p_noint = probability_from_log(out.log_p_noint);
  out.p_x = probability_from_log(out.log_p_x);
  out.p_y = probability_from_log(out.log_p_y);
  out.p_c = out.p_noint * out.p_x * out.p_y;
  return out;
}

}  // namespace crossfire
