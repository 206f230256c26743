#pragma once

// Channel and system constants. Everything downstream works in linear
// scale; dB only appears in SystemDefaults.

namespace crossfire {

double db_to_linear(double db);
double linear_to_db(double linear);

// Linear-scale channel description shared by every evaluation path.
struct ChannelParams {
  double alpha = 0.0;   // path loss exponent, > 1
  double a_los = 0.0;   // LOS/WLOS coefficient, gain * m^alpha
  double a_nlos = 0.0;  // NLOS coefficient, gain * m^(2 alpha)
  double delta = 0.0;   // break-point distance from the intersection [m]
  double beta = 0.0;    // SINR detection threshold
  double gamma0 = 0.0;  // noise-to-transmit-power ratio N0/P0
};

// Throws ValidationError naming the first violated constraint, including
// a_nlos < a_los * (delta/2)^alpha.
void validate(const ChannelParams& p);

// Configuration-boundary constants in their natural (dB, GHz, m) units.
struct SystemDefaults {
  double p0_dbm = 20.0;
  double n0_dbm = -99.0;
  double beta_db = 8.0;
  double f0_ghz = 5.9;
  double d0_m = 10.0;
  double delta_m = 15.0;
  double alpha = 1.68;
  double nlos_severity_r = 0.0;  // required, strictly inside (0, 1)
  double p_target = 0.9;
  double rx_offset_m = -50.0;
  double d_max_m = 120.0;
  double lambda_per_m = 0.01;
  double r_max_m = 1000.0;
};

// Reference parameter set with the given NLOS severity r.
SystemDefaults reference_defaults(double nlos_severity_r);

void validate(const SystemDefaults& d);

// A_los [dB] = -37.86 + 10 alpha
// A_nlos [dB] = -37.86 + 7 alpha + 10 log10(r * delta^alpha)
double los_coefficient_db(double alpha);
double nlos_coefficient_db(double alpha, double delta, double nlos_severity_r);

ChannelParams build_channel_params(const SystemDefaults& d);

}  // namespace crossfire
