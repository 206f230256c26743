#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossfire/analytic.hpp"
#include "crossfire/geometry.hpp"
#include "crossfire/params.hpp"

namespace crossfire {

struct SweepSettings {
  std::vector<double> design_distances_m{20, 40, 60, 80, 100, 120};
  std::size_t r_grid_points = 50;
  std::optional<double> r_grid_min_m;  // defaults to delta_m
  std::optional<double> r_grid_max_m;  // defaults to r_max_m
  std::vector<double> r_set_m{100, 500, 1000};
  double eval_step_m = 1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

/// Parsed configuration document:
///
///   {
///     "system":      {"p0_dbm", "n0_dbm", "beta_db", "p_target"},
///     "propagation": {"f0_ghz", "d0_m", "delta_m", "alpha", "nlos_severity_r",
///                     "min_separation_m"},
///     "geometry":    {"rx_offset_m", "d_max_m", "tx": {"road", "offset"}},
///     "traffic":     {"lambda_per_m", "r_max_m", "p_i", "radius_m"},
///     "sweep":       {"design_distances_m", "r_grid_points", "r_grid_min_m",
///                     "r_grid_max_m", "r_set_m", "eval_step_m", "trials", "seed"}
///   }
///
/// Every field is optional except propagation.nlos_severity_r; omitted
/// fields take the reference values. Unknown sections or fields are errors.
struct RunConfig {
  SystemDefaults system;
  double min_separation_m = 0.1;
  std::optional<RoadPosition> tx;
  std::optional<double> p_i;
  std::optional<double> radius_m;  // defaults to r_max_m
  SweepSettings sweep;
  std::string source_text;  // raw bytes the config was parsed from
};

// Throws ValidationError with a message naming the offending field.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Parses "horizontal:-30", "vertical:10", "h:-30" or "v:10".
RoadPosition parse_position(const std::string& text);

ChannelParams channel_params(const RunConfig& c);
RoadPosition receiver(const RunConfig& c);
double eval_radius(const RunConfig& c);

// Scenario with the configured channel, RX, symmetric traffic and bounds.
// The TX is left at the intersection and p_i at the configured value (or 0).
Scenario environment(const RunConfig& c);

}  // namespace crossfire
