#include "crossfire/params.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "crossfire/errors.hpp"

namespace crossfire {

namespace {

constexpr double kFreeSpaceIntercept = -37.86;

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

double db_to_linear(double db) {
  if (!std::isfinite(db)) throw DomainError("db_to_linear: non-finite input");
  return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
  if (!(linear > 0.0) || !std::isfinite(linear)) {
    throw DomainError("linear_to_db: input must be finite and positive");
  }
  return 10.0 * std::log10(linear);
}

void validate(const ChannelParams& p) {
  require(std::isfinite(p.alpha) && p.alpha > 1.0, "alpha must be > 1");
  require(std::isfinite(p.delta) && p.delta > 0.0, "delta must be > 0");
  require(std::isfinite(p.a_los) && p.a_los > 0.0, "a_los must be > 0");
  require(std::isfinite(p.a_nlos) && p.a_nlos > 0.0, "a_nlos must be > 0");
  require(std::isfinite(p.beta) && p.beta > 0.0, "beta must be > 0");
  require(std::isfinite(p.gamma0) && p.gamma0 >= 0.0, "gamma0 must be >= 0");
  const double bound = p.a_los * std::pow(p.delta / 2.0, p.alpha);
  require(p.a_nlos < bound,
          fmt::format("NLOS must be more severe than WLOS: a_nlos < a_los*(delta/2)^alpha "
                      "violated ({:.6g} >= {:.6g})",
                      p.a_nlos, bound));
}

SystemDefaults reference_defaults(double nlos_severity_r) {
  SystemDefaults d;
  d.nlos_severity_r = nlos_severity_r;
  return d;
}

void validate(const SystemDefaults& d) {
  const auto finite = [](double v) { return std::isfinite(v); };
  require(finite(d.p0_dbm), "p0_dbm must be finite");
  require(finite(d.n0_dbm), "n0_dbm must be finite");
  require(finite(d.beta_db), "beta_db must be finite");
  require(finite(d.f0_ghz) && d.f0_ghz > 0.0, "f0_ghz must be > 0");
  require(finite(d.d0_m) && d.d0_m > 0.0, "d0_m must be > 0");
  require(finite(d.delta_m) && d.delta_m > 0.0, "delta_m must be > 0");
  require(finite(d.alpha) && d.alpha > 1.0, "alpha must be > 1");
  require(d.nlos_severity_r > 0.0 && d.nlos_severity_r < 1.0,
          "nlos_severity_r must lie strictly inside (0, 1)");
  require(d.p_target > 0.0 && d.p_target < 1.0, "p_target must lie strictly inside (0, 1)");
  require(finite(d.rx_offset_m) && d.rx_offset_m != 0.0,
          "rx_offset_m must be finite and non-zero");
  require(finite(d.d_max_m) && d.d_max_m > 0.0, "d_max_m must be > 0");
  require(finite(d.lambda_per_m) && d.lambda_per_m >= 0.0, "lambda_per_m must be >= 0");
  require(finite(d.r_max_m) && d.r_max_m >= d.delta_m, "r_max_m must be >= delta_m");
}

double los_coefficient_db(double alpha) { return kFreeSpaceIntercept + 10.0 * alpha; }

double nlos_coefficient_db(double alpha, double delta, double nlos_severity_r) {
  return kFreeSpaceIntercept + 7.0 * alpha +
         10.0 * std::log10(nlos_severity_r * std::pow(delta, alpha));
}

ChannelParams build_channel_params(const SystemDefaults& d) {
  validate(d);
  ChannelParams p;
  p.alpha = d.alpha;
  p.delta = d.delta_m;
  p.a_los = db_to_linear(los_coefficient_db(d.alpha));
  p.a_nlos = db_to_linear(nlos_coefficient_db(d.alpha, d.delta_m, d.nlos_severity_r));
  p.beta = db_to_linear(d.beta_db);
  p.gamma0 = db_to_linear(d.n0_dbm - d.p0_dbm);
  validate(p);
  return p;
}

}  // namespace crossfire
