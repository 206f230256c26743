#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "crossfire/analytic.hpp"

namespace crossfire {

using Rng = std::mt19937_64;

// Independent stream for trial `index` of a run seeded with `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

struct PppSample {
  std::vector<double> points;  // signed offsets along one road
};

// Homogeneous PPP on [-bound, bound]: Poisson(2 * intensity * bound) points,
// i.i.d. uniform positions.
PppSample sample_ppp(double intensity, double bound, Rng& rng);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sqrt(mean (1 - mean) / trials)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t successes = 0;
  std::uint64_t interferers = 0;   // total sampled over all trials
  std::uint64_t epsilon_hits = 0;  // interferers clamped to the guard distance
};

/// Monte Carlo estimate of Pr(SINR >= beta). Each trial draws both thinned
/// interferer processes, Exp(1) fading for every link, and tests
///
///   h_tx l(tx, rx) >= beta (sum_k h_k l(x_k, rx) + gamma0).
///
/// Interferers closer than s.min_separation are pulled out to that distance
/// and counted in epsilon_hits. Trial i uses trial_rng(seed, i), so the
/// result is bit-identical for any worker count.
McEstimate mc_success(const Scenario& s, std::uint64_t trials, std::uint64_t seed,
                      unsigned workers = 1);

struct QuadResult {
  double probability = 1.0;
  double exponent = 0.0;  // probability = exp(-exponent)
  double error_estimate = 0.0;
};

// Direct adaptive Gauss-Kronrod integration of the probability generating
// functional over each road, split at the kink x = x_rx (horizontal) and at
// y = 0, |y| = delta (vertical). Throws QuadratureError when the exponent's
// estimated absolute error exceeds 1e-10.
QuadResult quad_px_detail(const Scenario& s);
QuadResult quad_py_detail(const Scenario& s);
double quad_px(const Scenario& s);
double quad_py(const Scenario& s);

}  // namespace crossfire
