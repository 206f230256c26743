#pragma once

#include <span>
#include <vector>

#include "crossfire/analytic.hpp"
#include "crossfire/geometry.hpp"

namespace crossfire {

struct DesignPoint {
  RoadPosition design_tx = RoadPosition::horizontal(0.0);
  RoadPosition rx = RoadPosition::horizontal(-50.0);
  double radius = 0.0;  // r_x = r_y
  double p_target = 0.0;
  double p_i_star = 0.0;
  double p_noint = 0.0;
  // Raw inversion exceeded 1 (or was unbounded) and was capped.
  bool clamped = false;
};

/// Largest Aloha probability meeting p_target at design_tx when interferers
/// occupy |x|, |y| <= radius:
///
///   p* = (ln P_noint - ln p_target) / (zeta (lambda_x X(R) + 2 lambda_y Y(R)))
///
/// `env` supplies the channel, the RX, traffic intensities and the guard
/// distance; its tx, bounds and p_i are ignored. Throws InfeasibleDesign
/// when P_noint < p_target. Results above 1, or an unbounded result with
/// no traffic, are capped at 1 and flagged.
DesignPoint optimal_aloha(const Scenario& env, const RoadPosition& design_tx, double radius,
                          double p_target);

struct Fig3Row {
  double distance = 0.0;
  double radius = 0.0;
  double p_i_star = 0.0;  // NaN when infeasible
  bool feasible = true;
  bool clamped = false;
};

// One row per (distance, radius), distance-major. Infeasible cells are
// flagged rather than thrown. Radii must lie in [delta, r_max].
std::vector<Fig3Row> sweep_fig3(const Scenario& env, std::span<const double> design_distances,
                                std::span<const double> radii, double p_target, double r_max,
                                unsigned workers = 1);

struct Fig4Row {
  double radius = 0.0;
  double distance = 0.0;
  double p_i_star = 0.0;
  double outage = 0.0;
};

// Outage 1 - P_c along the Manhattan separation axis for the designs
// anchored at design_tx, one block of rows per radius. Infeasible designs
// propagate InfeasibleDesign.
std::vector<Fig4Row> sweep_fig4(const Scenario& env, const RoadPosition& design_tx,
                                std::span<const double> radii,
                                std::span<const double> eval_distances, double p_target,
                                unsigned workers = 1);

// n evenly spaced points covering [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

// 1 m grid over (0, d_max] plus the design distances and the two points
// bracketing the WLOS/NLOS transition at |x_rx| + delta, sorted and unique.
std::vector<double> fig4_distances(double d_max, std::span<const double> design_distances,
                                   double rx_norm, double delta, double step = 1.0,
                                   double bracket = 0.01);

}  // namespace crossfire
