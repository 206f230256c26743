#include "crossfire/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/random/exponential_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <fmt/format.h>

#include "crossfire/errors.hpp"
#include "crossfire/parallel.hpp"

namespace crossfire {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Absolute error on the exponent equals the relative error on exp(-exponent).
constexpr double kExponentTolerance = 1e-10;
constexpr double kPieceTolerance = 1e-12;
constexpr unsigned kMaxDepth = 18;

double clamped_gain(const ChannelParams& p, double distance) {
  return distance > 0.0 ? p.a_los * std::pow(distance, -p.alpha)
                        : std::numeric_limits<double>::infinity();
}

struct TrialOutcome {
  bool success = false;
  std::uint64_t interferers = 0;
  std::uint64_t hits = 0;
};

TrialOutcome run_trial(const Scenario& s, double signal_gain, Rng& rng) {
  const ChannelParams& p = s.params;
  const double x_rx = s.rx.x();
  const double eps = s.min_separation;
  boost::random::exponential_distribution<double> fading(1.0);

  TrialOutcome out;
  const double signal = fading(rng) * signal_gain;

  double interference = 0.0;
  const PppSample on_x = sample_ppp(s.p_i * s.lambda_x, s.r_x, rng);
  for (double x : on_x.points) {
    const double d = std::abs(x - x_rx);
    double g;
    if (d < eps || d == 0.0) {
      ++out.hits;
      g = clamped_gain(p, eps);
    } else {
      g = pathloss_los(x, x_rx, p, 0.0);
    }
    interference += fading(rng) * g;
  }
  const PppSample on_y = sample_ppp(s.p_i * s.lambda_y, s.r_y, rng);
  for (double y : on_y.points) {
    const double wlos_distance = std::abs(y) + std::abs(x_rx);
    const bool wlos = std::min(std::abs(y), std::abs(x_rx)) <= p.delta;
    double g;
    if (wlos && (wlos_distance < eps || wlos_distance == 0.0)) {
      ++out.hits;
      g = clamped_gain(p, eps);
    } else {
      g = pathloss_cross(y, x_rx, p, 0.0);
    }
    interference += fading(rng) * g;
  }
  out.interferers = on_x.points.size() + on_y.points.size();
  out.success = signal >= p.beta * (interference + p.gamma0);
  return out;
}

// Integrand on each side of the kink as a function of the distance to it.
// There it behaves like 1 - c d^alpha, which Gauss-Kronrod cannot resolve
// to full precision but tanh-sinh handles as an endpoint singularity.
template <typename F, typename K>
QuadResult integrate_pieces(F&& f, K&& near_kink, double kink, std::vector<double> cuts,
                            double scale) {
  static boost::math::quadrature::tanh_sinh<double> near;
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double integral = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double piece_error = 0.0;
    if (cuts[i] == kink || cuts[i + 1] == kink) {
      integral += near.integrate(near_kink, 0.0, cuts[i + 1] - cuts[i], kPieceTolerance,
                                 &piece_error);
    } else {
      integral += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          f, cuts[i], cuts[i + 1], kMaxDepth, kPieceTolerance, &piece_error);
    }
    error += piece_error;
  }
  QuadResult out;
  out.exponent = scale * integral;
  out.error_estimate = scale * error;
  out.probability = std::exp(-out.exponent);
  if (!(out.error_estimate <= kExponentTolerance)) {
    throw QuadratureError(
        fmt::format("quadrature did not converge: exponent error {:.3g} > {:.3g}",
                    out.error_estimate, kExponentTolerance),
        out.error_estimate);
  }
  return out;
}

// Geometric refinement points around a kink, kept inside [lo, hi].
void add_kink_cuts(std::vector<double>& cuts, double at, double lo, double hi) {
  cuts.push_back(at);
  for (double h = 1e-3; h <= 1e4; h *= 10.0) {
    if (at - h > lo) cuts.push_back(at - h);
    if (at + h < hi) cuts.push_back(at + h);
  }
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ull)));
}

PppSample sample_ppp(double intensity, double bound, Rng& rng) {
  PppSample out;
  const double mean = 2.0 * intensity * bound;
  if (!(mean > 0.0)) return out;
  boost::random::poisson_distribution<std::uint64_t, double> count(mean);
  boost::random::uniform_real_distribution<double> position(-bound, bound);
  const std::uint64_t n = count(rng);
  out.points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.points.push_back(position(rng));
  return out;
}

McEstimate mc_success(const Scenario& s, std::uint64_t trials, std::uint64_t seed,
                      unsigned workers) {
  validate(s);
  if (trials == 0) throw ValidationError("trials must be >= 1");
  const double signal_gain = link_gain(s);

  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::atomic<std::uint64_t> successes{0}, interferers{0}, hits{0};
  parallel_for(chunks, workers, [&](std::size_t c) {
    std::uint64_t ok = 0, n = 0, h = 0;
    const std::uint64_t end = std::min<std::uint64_t>(trials, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      Rng rng = trial_rng(seed, i);
      const TrialOutcome t = run_trial(s, signal_gain, rng);
      ok += t.success;
      n += t.interferers;
      h += t.hits;
    }
    successes += ok;
    interferers += n;
    hits += h;
  });

  McEstimate out;
  out.trials = trials;
  out.seed = seed;
  out.successes = successes;
  out.interferers = interferers;
  out.epsilon_hits = hits;
  out.mean = static_cast<double>(out.successes) / static_cast<double>(trials);
  out.std_error = std::sqrt(out.mean * (1.0 - out.mean) / static_cast<double>(trials));
  return out;
}

QuadResult quad_px_detail(const Scenario& s) {
  validate(s);
  const double scale = s.p_i * s.lambda_x;
  if (scale == 0.0) return {};
  const ChannelParams& p = s.params;
  const double x_rx = s.rx.x();
  const double beta_prime = p.beta / link_gain(s);
  auto integrand = [&](double x) {
    return 1.0 / (1.0 + 1.0 / (beta_prime * pathloss_los(x, x_rx, p, 0.0)));
  };
  auto near_rx = [&](double d) {
    return 1.0 / (1.0 + 1.0 / (beta_prime * p.a_los * std::pow(d, -p.alpha)));
  };
  std::vector<double> cuts{-s.r_x, s.r_x};
  if (std::abs(x_rx) < s.r_x) add_kink_cuts(cuts, x_rx, -s.r_x, s.r_x);
  return integrate_pieces(integrand, near_rx, x_rx, std::move(cuts), scale);
}

QuadResult quad_py_detail(const Scenario& s) {
  validate(s);
  const double scale = s.p_i * s.lambda_y;
  if (scale == 0.0) return {};
  const ChannelParams& p = s.params;
  const double x_rx = s.rx.x();
  const double beta_prime = p.beta / link_gain(s);
  auto integrand = [&](double y) {
    return 1.0 / (1.0 + 1.0 / (beta_prime * pathloss_cross(y, x_rx, p, 0.0)));
  };
  // Only singular when the RX sits at the intersection; otherwise the
  // kink at y = 0 is a plain |y| corner and the distance form still holds.
  auto near_origin = [&](double d) { return integrand(d); };
  std::vector<double> cuts{-s.r_y, -p.delta, p.delta, s.r_y};
  add_kink_cuts(cuts, 0.0, -p.delta, p.delta);
  return integrate_pieces(integrand, near_origin, 0.0, std::move(cuts), scale);
}

double quad_px(const Scenario& s) { return quad_px_detail(s).probability; }
double quad_py(const Scenario& s) { return quad_py_detail(s).probability; }

}  // namespace crossfire
