#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "commands.hpp"
#include "rydscale/errors.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerics = 3;
constexpr int exit_io = 4;

void add_common(CLI::App* cmd, ryd::cli::CommonOptions& options, bool needs_config) {
  auto* config = cmd->add_option("--config", options.config_path, "run configuration file");
  if (needs_config) config->required();
  cmd->add_option("--out", options.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", options.seed, "override the master seed")
      ->each([&options](const std::string&) { options.seed_given = true; });
  cmd->add_option("--threads", options.threads, "worker threads (speed only, never results)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frozen Rydberg gas scaling toolkit"};
  app.require_subcommand(1);

  int d = 3, p = 6;
  auto* exponents = app.add_subcommand("exponents", "closed-form critical exponents");
  exponents->add_option("--d", d, "dimension")->capture_default_str();
  exponents->add_option("--p", p, "interaction exponent")->capture_default_str();

  ryd::cli::EosGrid eos_grid;
  std::string eos_out = ".";
  auto* eos = app.add_subcommand("eos", "mean-field equation of state grid");
  eos->add_option("--d", eos_grid.d)->capture_default_str();
  eos->add_option("--p", eos_grid.p)->capture_default_str();
  eos->add_option("--alpha-min", eos_grid.alpha_min)->capture_default_str();
  eos->add_option("--alpha-max", eos_grid.alpha_max)->capture_default_str();
  eos->add_option("--alpha-points", eos_grid.alpha_points)->capture_default_str();
  eos->add_option("--delta-min", eos_grid.delta_min)->capture_default_str();
  eos->add_option("--delta-max", eos_grid.delta_max)->capture_default_str();
  eos->add_option("--delta-points", eos_grid.delta_points)->capture_default_str();
  eos->add_option("--out", eos_out)->capture_default_str();

  ryd::cli::CommonOptions simulate_options;
  auto* simulate = app.add_subcommand("simulate", "disorder-averaged excitation trajectory");
  add_common(simulate, simulate_options, true);

  ryd::cli::CommonOptions sweep_options;
  auto* sweep = app.add_subcommand("sweep", "alpha sweep with saturation fits and collapse");
  add_common(sweep, sweep_options, true);

  ryd::cli::CommonOptions collapse_options;
  std::string data_path;
  auto* collapse = app.add_subcommand("collapse", "rescale and fit external excitation data");
  add_common(collapse, collapse_options, true);
  collapse->add_option("--data", data_path, "input CSV (n,omega,N,time,N_R)")->required();

  ryd::cli::CommonOptions lda_options;
  auto* lda = app.add_subcommand("lda", "trapped-cloud averages of the local scaling law");
  add_common(lda, lda_options, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }

  try {
    if (exponents->parsed()) ryd::cli::run_exponents(d, p);
    if (eos->parsed()) ryd::cli::run_eos(eos_grid, eos_out);
    if (simulate->parsed()) ryd::cli::run_simulate(simulate_options);
    if (sweep->parsed()) ryd::cli::run_sweep(sweep_options);
    if (collapse->parsed()) ryd::cli::run_collapse(collapse_options, data_path);
    if (lda->parsed()) ryd::cli::run_lda(lda_options);
  } catch (const ryd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const ryd::NonconvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return exit_numerics;
  } catch (const ryd::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_ok;
}
