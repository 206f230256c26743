#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crossfire/analytic.hpp"
#include "crossfire/config.hpp"
#include "crossfire/oracles.hpp"

namespace crossfire::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kInfeasible = 3,
  kOracleMismatch = 4,
};

struct Options {
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  unsigned workers = 1;
  // eval only
  std::optional<std::string> tx;
  std::optional<std::string> rx;
  std::optional<double> distance;
  // Fixed manifest timestamp; empty means the current UTC time.
  std::string timestamp;
};

// CSV body plus the sidecar manifest fields for one command run.
struct Report {
  std::string csv;
  std::string summary;  // human-readable lines, may be empty
  std::vector<std::uint64_t> seeds;
  int exit_code = kOk;
};

Report eval_report(const RunConfig& c, const Options& o);
Report fig3_report(const RunConfig& c, const Options& o);
Report fig4_report(const RunConfig& c, const Options& o);
Report mc_validate_report(const RunConfig& c, const Options& o);

struct ValidationCase {
  std::string label;
  Scenario scenario;
};

// Thirty scenarios: five TX placements for each of two RX positions
// (|x_rx| = 50 and 5), crossed with three (R, target) pairs. p_i is set
// from the design inversion for the target so that P_c stays away from
// 0 and 1.
std::vector<ValidationCase> mc_validation_grid(const Scenario& env);

struct ValidationVerdict {
  SuccessBreakdown analytic;
  McEstimate mc;
  double abs_diff = 0.0;
  bool pass = false;
  bool guard_flagged = false;  // epsilon guard not statistically negligible
};

ValidationVerdict validate_case(const Scenario& s, std::uint64_t trials, std::uint64_t seed,
                                unsigned workers);

// seed flag > CROSSFIRE_SEED > config.
std::uint64_t resolve_seed(const RunConfig& c, const Options& o);

std::string config_digest(const std::string& text);
std::string manifest_json(const RunConfig& c, const Options& o, const std::string& command,
                          const Report& r);

// Parses, runs and writes one subcommand; returns the process exit code.
int run(const std::string& command, const Options& o, std::ostream& out, std::ostream& err);

}  // namespace crossfire::cli
