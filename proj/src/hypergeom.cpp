#include "crossfire/hypergeom.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "crossfire/errors.hpp"

namespace crossfire {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw DomainError("g_circ: alpha must be finite and > 1");
  }
}

void check_theta(double theta) {
  if (!(theta >= 0.0)) throw DomainError("g_circ: theta must be >= 0");
}

// 2F1(1, 1; c; s) for c > 1, 0 <= s <= 1/2. Terms t_{n+1} = t_n (n+1) s / (n+c)
// are positive with ratio below s, so the sum converges geometrically.
double hyp2f1_one_one(double c, double s) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 200; ++n) {
    term *= (n + 1.0) / (n + c) * s;
    sum += term;
    if (term <= sum * std::numeric_limits<double>::epsilon() * 0.25) break;
  }
  return sum;
}

// theta <= 1 branch.
double g_near(double alpha, double theta) {
  const double w = std::pow(theta, alpha);
  return theta / (1.0 + w) * hyp2f1_one_one(1.0 + 1.0 / alpha, w / (1.0 + w));
}

// int_theta^inf du / (1 + u^alpha), theta >= 1.
double tail_far(double alpha, double theta) {
  if (std::isinf(theta)) return 0.0;
  const double v = std::pow(theta, -alpha);
  return std::pow(theta, 1.0 - alpha) / ((alpha - 1.0) * (1.0 + v)) *
         hyp2f1_one_one(2.0 - 1.0 / alpha, v / (1.0 + v));
}

}  // namespace

double g_circ_limit(double alpha) {
  check_alpha(alpha);
  // sin(pi/alpha) == sin(pi (alpha-1)/alpha); the latter keeps its relative
  // accuracy as alpha -> 1 where pi/alpha approaches pi.
  return std::numbers::pi / (alpha * std::sin(std::numbers::pi * ((alpha - 1.0) / alpha)));
}

double g_circ(double alpha, double theta) {
  check_alpha(alpha);
  check_theta(theta);
  if (theta == 0.0) return 0.0;
  if (theta <= 1.0) return g_near(alpha, theta);
  return g_circ_limit(alpha) - tail_far(alpha, theta);
}

double g_circ_tail(double alpha, double theta) {
  check_alpha(alpha);
  check_theta(theta);
  if (theta >= 1.0) return tail_far(alpha, theta);
  return g_circ_limit(alpha) - g_near(alpha, theta);
}

double g_circ_span(double alpha, double lo, double hi) {
  check_alpha(alpha);
  check_theta(lo);
  if (!(hi >= lo)) throw DomainError("g_circ_span: requires lo <= hi");
  if (lo >= 1.0) return tail_far(alpha, lo) - tail_far(alpha, hi);
  return g_circ(alpha, hi) - g_circ(alpha, lo);
}

}  // namespace crossfire
