#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "crossfire/cli.hpp"
#include "crossfire/parallel.hpp"

int main(int argc, char** argv) {
  namespace cli = crossfire::cli;

  CLI::App app{"crossfire: V2V success probability near an urban intersection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CROSSFIRE_VERSION);

  cli::Options opts;
  opts.workers = crossfire::default_workers();
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  double distance = 0.0;
  std::string tx;
  std::string rx;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON configuration file")->required();
    sub->add_option("--out", opts.out_path, "CSV output path (manifest written to PATH.manifest.json)");
    sub->add_option("--workers", opts.workers, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* eval = app.add_subcommand("eval", "closed-form success probability for one TX/RX pair");
  common(eval);
  auto* tx_opt = eval->add_option("--tx", tx, "TX position, e.g. horizontal:-30 or vertical:10");
  auto* rx_opt = eval->add_option("--rx", rx, "RX position on the horizontal road");
  auto* d_opt = eval->add_option("--distance", distance, "TX at this Manhattan separation from RX");

  auto* fig3 = app.add_subcommand("fig3", "optimal Aloha probability versus interference radius");
  common(fig3);

  auto* fig4 = app.add_subcommand("fig4", "outage versus TX/RX separation for each design");
  common(fig4);

  auto* mc = app.add_subcommand("mc-validate", "Monte Carlo check of the closed form");
  common(mc);
  auto* seed_opt = mc->add_option("--seed", seed, "RNG seed (falls back to CROSSFIRE_SEED, then config)");
  auto* trials_opt = mc->add_option("--trials", trials, "trials per scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kValidation;
  }

  if (*tx_opt) opts.tx = tx;
  if (*rx_opt) opts.rx = rx;
  if (*d_opt) opts.distance = distance;
  if (*seed_opt) opts.seed = seed;
  if (*trials_opt) opts.trials = trials;

  const std::string command = app.get_subcommands().front()->get_name();
  return cli::run(command, opts, std::cout, std::cerr);
}
