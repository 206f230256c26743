#pragma once

namespace crossfire {

/// Interference kernel
///
///   g(alpha, theta) = int_0^theta du / (1 + u^alpha)
///                   = theta * 2F1(1, 1/alpha; 1 + 1/alpha; -theta^alpha).
///
/// The power series in -theta^alpha only converges for theta < 1, and slowly
/// near 1. Both regimes are evaluated through the Pfaff transformation,
/// which turns each into a positive-term series in s <= 1/2:
///
///   theta <= 1:  g = theta / (1 + w) * 2F1(1, 1; 1 + 1/alpha; w / (1 + w)),   w = theta^alpha
///   theta >  1:  g = L - theta^(1-alpha) / ((alpha - 1)(1 + v))
///                        * 2F1(1, 1; 2 - 1/alpha; v / (1 + v)),              v = theta^-alpha
///
/// where L = pi / (alpha sin(pi / alpha)) is the theta -> infinity limit.
/// Accuracy is a few ulps of the result over the whole domain.
///
/// Requires alpha > 1 and theta >= 0 (theta = +inf returns L); throws
/// DomainError otherwise.
double g_circ(double alpha, double theta);

/// pi / (alpha sin(pi / alpha)), the supremum of g_circ(alpha, .).
double g_circ_limit(double alpha);

/// Upper tail int_theta^inf du / (1 + u^alpha) = L - g_circ(alpha, theta),
/// computed directly for theta >= 1.
double g_circ_tail(double alpha, double theta);

/// g_circ(alpha, hi) - g_circ(alpha, lo) for 0 <= lo <= hi. When both ends
/// are past u = 1 the difference of tails is used, which keeps full relative
/// accuracy for narrow spans far from the origin.
double g_circ_span(double alpha, double lo, double hi);

}  // namespace crossfire
