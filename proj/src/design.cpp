#include "crossfire/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "crossfire/errors.hpp"
#include "crossfire/parallel.hpp"

namespace crossfire {

namespace {

Scenario anchored(const Scenario& env, const RoadPosition& tx, double radius, double p_i) {
  Scenario s = env;
  s.tx = tx;
  s.r_x = radius;
  s.r_y = radius;
  s.p_i = p_i;
  return s;
}

}  // namespace

DesignPoint optimal_aloha(const Scenario& env, const RoadPosition& design_tx, double radius,
                          double p_target) {
  if (!(p_target > 0.0 && p_target < 1.0)) {
    throw ValidationError("p_target must lie strictly inside (0, 1)");
  }
  const Scenario s = anchored(env, design_tx, radius, 0.0);
  const SuccessBreakdown b = success_probability(s);

  DesignPoint out;
  out.design_tx = design_tx;
  out.rx = env.rx;
  out.radius = radius;
  out.p_target = p_target;
  out.p_noint = b.p_noint;

  const double numerator = b.log_p_noint - std::log(p_target);
  if (numerator < 0.0) {
    throw InfeasibleDesign(
        fmt::format("infeasible target: interference-free success {:.6g} is below target {:.6g}",
                    b.p_noint, p_target),
        b.p_noint, p_target);
  }
  if (numerator == 0.0) return out;

  const double denominator =
      b.zeta * (s.lambda_x * b.x_factor + 2.0 * s.lambda_y * b.y_factor);
  const double raw = denominator > 0.0 ? numerator / denominator
                                       : std::numeric_limits<double>::infinity();
  out.clamped = raw > 1.0;
  out.p_i_star = std::min(raw, 1.0);
  return out;
}

std::vector<Fig3Row> sweep_fig3(const Scenario& env, std::span<const double> design_distances,
                                std::span<const double> radii, double p_target, double r_max,
                                unsigned workers) {
  for (double r : radii) {
    if (!(r >= env.params.delta && r <= r_max)) {
      throw ValidationError(fmt::format(
          "radius {:.6g} outside [delta, r_max] = [{:.6g}, {:.6g}]", r, env.params.delta, r_max));
    }
  }
  std::vector<Fig3Row> rows(design_distances.size() * radii.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    Fig3Row& row = rows[i];
    row.distance = design_distances[i / radii.size()];
    row.radius = radii[i % radii.size()];
    try {
      const DesignPoint d =
          optimal_aloha(env, tx_from_manhattan(row.distance, env.rx), row.radius, p_target);
      row.p_i_star = d.p_i_star;
      row.clamped = d.clamped;
    } catch (const InfeasibleDesign&) {
      row.feasible = false;
      row.p_i_star = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return rows;
}

std::vector<Fig4Row> sweep_fig4(const Scenario& env, const RoadPosition& design_tx,
                                std::span<const double> radii,
                                std::span<const double> eval_distances, double p_target,
                                unsigned workers) {
  std::vector<double> p_star;
  p_star.reserve(radii.size());
  for (double r : radii) p_star.push_back(optimal_aloha(env, design_tx, r, p_target).p_i_star);

  std::vector<Fig4Row> rows(radii.size() * eval_distances.size());
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    const std::size_t k = i / eval_distances.size();
    Fig4Row& row = rows[i];
    row.radius = radii[k];
    row.distance = eval_distances[i % eval_distances.size()];
    row.p_i_star = p_star[k];
    const Scenario s =
        anchored(env, tx_from_manhattan(row.distance, env.rx), row.radius, row.p_i_star);
    row.outage = 1.0 - success_probability(s).p_c;
  });
  return rows;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {lo};
  out.reserve(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) out.push_back(lo + step * static_cast<double>(i));
  out.push_back(hi);
  return out;
}

std::vector<double> fig4_distances(double d_max, std::span<const double> design_distances,
                                   double rx_norm, double delta, double step, double bracket) {
  if (!(step > 0.0)) throw ValidationError("eval step must be > 0");
  std::vector<double> out;
  for (int i = 1; step * i <= d_max + 1e-9; ++i) out.push_back(step * i);
  for (double d : design_distances) out.push_back(d);
  const double transition = rx_norm + delta;
  if (transition - bracket > 0.0) out.push_back(transition - bracket);
  if (transition + bracket <= d_max) out.push_back(transition + bracket);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace crossfire
