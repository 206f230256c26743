#include "crossfire/cli.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "crossfire/design.hpp"
#include "crossfire/errors.hpp"

namespace crossfire::cli {

namespace {

// Smallest radius in the default outage panels.
constexpr double kSmallestPlottedRadius = 100.0;

std::string num(double v) { return fmt::format("{:.6g}", v); }

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

RoadPosition eval_tx(const RunConfig& c, const Options& o, const RoadPosition& rx) {
  const int given = int(o.tx.has_value()) + int(o.distance.has_value());
  if (given > 1) throw ValidationError("give at most one of --tx and --distance");
  if (o.tx) return parse_position(*o.tx);
  if (o.distance) return tx_from_manhattan(*o.distance, rx);
  if (c.tx) return *c.tx;
  throw ValidationError("no TX position: set geometry.tx, --tx or --distance");
}

std::uint64_t trials_for(const RunConfig& c, const Options& o) {
  return o.trials.value_or(c.sweep.trials);
}

}  // namespace

Report eval_report(const RunConfig& c, const Options& o) {
  if (!c.p_i) throw ValidationError("traffic.p_i is required for eval");
  Scenario s = environment(c);
  if (o.rx) {
    s.rx = parse_position(*o.rx);
    if (s.rx.road() != Road::kHorizontal) throw ValidationError("--rx must be on the horizontal road");
  }
  s.tx = eval_tx(c, o, s.rx);
  const SuccessBreakdown b = success_probability(s);

  Report r;
  r.csv = "tx_road,tx_offset,rx_offset,distance,R,p_i,link_class,p_noint,p_x,p_y,p_c,zeta,kappa\n";
  r.csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(s.tx.road()),
                       num(s.tx.offset()), num(s.rx.x()), num(manhattan(s.tx, s.rx)), num(s.r_x),
                       num(s.p_i), to_string(b.link_class), num(b.p_noint), num(b.p_x),
                       num(b.p_y), num(b.p_c), num(b.zeta), num(b.kappa));
  r.summary = fmt::format(
      "link {} ({} m)\n  p_noint {}\n  p_x     {}\n  p_y     {}\n  p_c     {}\n  zeta    {} m\n"
      "  kappa   {}\n",
      to_string(b.link_class), num(manhattan(s.tx, s.rx)), num(b.p_noint), num(b.p_x),
      num(b.p_y), num(b.p_c), num(b.zeta), num(b.kappa));
  return r;
}

Report fig3_report(const RunConfig& c, const Options& o) {
  const Scenario env = environment(c);
  const auto radii = linspace(c.sweep.r_grid_min_m.value_or(c.system.delta_m),
                              c.sweep.r_grid_max_m.value_or(c.system.r_max_m),
                              c.sweep.r_grid_points);
  const auto rows = sweep_fig3(env, c.sweep.design_distances_m, radii, c.system.p_target,
                               c.system.r_max_m, o.workers);
  Report r;
  r.csv = "distance,R,p_i_star,feasible\n";
  std::size_t infeasible = 0, clamped = 0;
  for (const Fig3Row& row : rows) {
    infeasible += !row.feasible;
    clamped += row.clamped;
    r.csv += fmt::format("{},{},{},{}\n", num(row.distance), num(row.radius), num(row.p_i_star),
                         row.feasible ? 1 : 0);
  }
  if (infeasible > 0) r.summary += fmt::format("{} infeasible row(s)\n", infeasible);
  if (clamped > 0) r.summary += fmt::format("{} row(s) capped at p_i = 1 (over-provisioned)\n", clamped);
  return r;
}

Report fig4_report(const RunConfig& c, const Options& o) {
  const Scenario env = environment(c);
  const auto& designs = c.sweep.design_distances_m;
  const auto distances = fig4_distances(c.system.d_max_m, designs, std::abs(c.system.rx_offset_m),
                                        c.system.delta_m, c.sweep.eval_step_m);
  Report r;
  for (double radius : c.sweep.r_set_m) {
    if (radius < kSmallestPlottedRadius) {
      r.summary += fmt::format("note: R = {} m is below the smallest plotted radius ({} m)\n",
                               num(radius), num(kSmallestPlottedRadius));
    }
  }
  r.csv = "panel,R,distance,p_i_star,outage\n";
  for (std::size_t k = 0; k < designs.size(); ++k) {
    const std::string panel = k < 26 ? std::string(1, char('a' + k)) : fmt::format("p{}", k);
    const RoadPosition tx = tx_from_manhattan(designs[k], env.rx);
    for (double radius : c.sweep.r_set_m) {
      if (optimal_aloha(env, tx, radius, c.system.p_target).clamped) {
        r.summary += fmt::format("panel {}: design at R = {} m capped at p_i = 1 (over-provisioned)\n",
                                 panel, num(radius));
      }
    }
    const auto rows = sweep_fig4(env, tx, c.sweep.r_set_m, distances, c.system.p_target, o.workers);
    for (const Fig4Row& row : rows) {
      r.csv += fmt::format("{},{},{},{},{}\n", panel, num(row.radius), num(row.distance),
                           num(row.p_i_star), num(row.outage));
    }
  }
  return r;
}

std::vector<ValidationCase> mc_validation_grid(const Scenario& env) {
  struct Placement {
    double rx_x;
    RoadPosition tx;
  };
  const std::vector<Placement> placements{
      {-50.0, RoadPosition::horizontal(-30.0)}, {-50.0, RoadPosition::horizontal(-10.0)},
      {-50.0, RoadPosition::vertical(10.0)},    {-50.0, RoadPosition::vertical(30.0)},
      {-50.0, RoadPosition::vertical(70.0)},    {-5.0, RoadPosition::horizontal(-25.0)},
      {-5.0, RoadPosition::horizontal(15.0)},   {-5.0, RoadPosition::vertical(10.0)},
      {-5.0, RoadPosition::vertical(40.0)},     {-5.0, RoadPosition::vertical(80.0)},
  };
  struct Load {
    double radius;
    double target;
  };
  const std::array<Load, 3> loads{{{100.0, 0.9}, {1000.0, 0.6}, {100.0, 0.3}}};

  std::vector<ValidationCase> out;
  for (const Placement& pl : placements) {
    for (const Load& load : loads) {
      Scenario base = env;
      base.rx = RoadPosition::horizontal(pl.rx_x);
      Scenario s = base;
      s.tx = pl.tx;
      s.r_x = s.r_y = load.radius;
      try {
        s.p_i = optimal_aloha(base, pl.tx, load.radius, load.target).p_i_star;
      } catch (const InfeasibleDesign&) {
        s.p_i = 0.0;  // noise-limited link; still a valid comparison
      }
      out.push_back({fmt::format("rx{}_{}{}_R{}_t{}", num(pl.rx_x), pl.tx.road() == Road::kHorizontal ? 'h' : 'v',
                                 num(pl.tx.offset()), num(load.radius), num(load.target)),
                     s});
    }
  }
  return out;
}

ValidationVerdict validate_case(const Scenario& s, std::uint64_t trials, std::uint64_t seed,
                                unsigned workers) {
  ValidationVerdict v;
  v.analytic = success_probability(s);
  v.mc = mc_success(s, trials, seed, workers);
  v.abs_diff = std::abs(v.mc.mean - v.analytic.p_c);
  v.pass = v.abs_diff <= 3.0 * v.mc.std_error;
  const double expected_interferers =
      static_cast<double>(trials) * 2.0 * s.p_i * (s.lambda_x * s.r_x + s.lambda_y * s.r_y);
  v.guard_flagged = expected_interferers > 0.0 &&
                    static_cast<double>(v.mc.epsilon_hits) / expected_interferers >= 1e-3;
  return v;
}

Report mc_validate_report(const RunConfig& c, const Options& o) {
  const std::uint64_t trials = trials_for(c, o);
  if (trials < 1000) throw ValidationError("--trials must be >= 1000 for mc-validate");
  const std::uint64_t seed = resolve_seed(c, o);
  const auto grid = mc_validation_grid(environment(c));

  Report r;
  r.seeds.push_back(seed);
  r.csv =
      "scenario,tx_road,tx_offset,rx_offset,R,p_i,link_class,analytic_p_c,mc_mean,std_error,"
      "abs_diff,epsilon_hits,pass\n";
  std::size_t passed = 0;
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Scenario& s = grid[i].scenario;
    // Distinct, reproducible stream per scenario.
    const ValidationVerdict v = validate_case(s, trials, seed + i, o.workers);
    passed += v.pass;
    flagged += v.guard_flagged;
    r.csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", grid[i].label,
                         to_string(s.tx.road()), num(s.tx.offset()), num(s.rx.x()), num(s.r_x),
                         num(s.p_i), to_string(v.analytic.link_class), num(v.analytic.p_c),
                         num(v.mc.mean), num(v.mc.std_error), num(v.abs_diff), v.mc.epsilon_hits,
                         v.pass ? "pass" : "FAIL");
  }
  const std::size_t required = grid.size() - 2;
  r.summary = fmt::format("{}/{} scenarios within 3 sigma (need {}), {} trials, seed {}\n", passed,
                          grid.size(), required, trials, seed);
  if (flagged > 0) r.summary += fmt::format("warning: guard distance not negligible in {} scenario(s)\n", flagged);
  r.exit_code = passed >= required ? kOk : kOracleMismatch;
  return r;
}

std::uint64_t resolve_seed(const RunConfig& c, const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("CROSSFIRE_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used, 10);
      if (env[used] != '\0') throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("CROSSFIRE_SEED='{}' is not an unsigned integer", env));
    }
  }
  return c.sweep.seed;
}

std::string config_digest(const std::string& text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr);
  std::string hex = "sha256:";
  for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::string manifest_json(const RunConfig& c, const Options& o, const std::string& command,
                          const Report& r) {
  nlohmann::ordered_json m;
  m["tool"] = "crossfire";
  m["tool_version"] = CROSSFIRE_VERSION;
  m["command"] = command;
  m["config_digest"] = config_digest(c.source_text);
  m["seeds"] = r.seeds;
  m["min_separation_m"] = c.min_separation_m;
  m["nlos_severity_r"] = c.system.nlos_severity_r;
  m["timestamp"] = o.timestamp.empty() ? utc_now() : o.timestamp;
  return m.dump(2) + "\n";
}

int run(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig c = load_config(o.config_path);
    Report r;
    if (command == "eval") {
      r = eval_report(c, o);
    } else if (command == "fig3") {
      r = fig3_report(c, o);
    } else if (command == "fig4") {
      r = fig4_report(c, o);
    } else if (command == "mc-validate") {
      r = mc_validate_report(c, o);
    } else {
      err << "unknown command '" << command << "'\n";
      return kValidation;
    }
    const std::string manifest = manifest_json(c, o, command, r);
    if (o.out_path) {
      std::ofstream csv(*o.out_path, std::ios::binary);
      std::ofstream side(*o.out_path + ".manifest.json", std::ios::binary);
      if (!csv || !side) {
        err << "cannot write '" << *o.out_path << "'\n";
        return kFailure;
      }
      csv << r.csv;
      side << manifest;
      out << r.summary;
    } else {
      out << r.csv;
      err << r.summary << manifest;
    }
    return r.exit_code;
  } catch (const InfeasibleDesign& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace crossfire::cli
