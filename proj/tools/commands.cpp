#include "commands.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <vector>

#include "rydscale/config.hpp"
#include "rydscale/constants.hpp"
#include "rydscale/disorder.hpp"
#include "rydscale/errors.hpp"
#include "rydscale/io.hpp"
#include "rydscale/lda.hpp"
#include "rydscale/meanfield.hpp"
#include "rydscale/params.hpp"
#include "rydscale/rng.hpp"
#include "rydscale/scaling.hpp"
#include "rydscale/superatom.hpp"

namespace ryd::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string out_file(const std::string& out_dir, const std::string& name) {
  fs::create_directories(out_dir);
  return (fs::path(out_dir) / name).string();
}

void write_gnuplot_stub(const std::string& out_dir, const std::string& name,
                        const std::string& body) {
  const std::string path = out_file(out_dir, name);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "# gnuplot stub\nset datafile separator ','\nset logscale xy\n" << body;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw ConfigError("log grid needs 0 < min < max and at least 2 points");
  std::vector<double> grid;
  for (int i = 0; i < points; ++i)
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  return grid;
}

ordered_json json_powerlaw(const PowerLawFit& fit) {
  ordered_json out;
  out["exponent"] = fit.exponent;
  out["exponent_stderr"] = fit.exponent_stderr;
  out["intercept"] = fit.intercept;
  out["intercept_stderr"] = fit.intercept_stderr;
  out["r_squared"] = fit.r_squared;
  out["point_count"] = fit.point_count;
  return out;
}

ordered_json json_collapse(const CollapseReport& report) {
  ordered_json out;
  out["declared"] = report.collapse;
  out["rms_log_residual"] = report.rms_log_residual;
  out["pooled_fit"] = json_powerlaw(report.pooled);
  ordered_json groups = ordered_json::array();
  for (const GroupResidual& group : report.groups) {
    ordered_json g;
    g["label"] = group.label;
    g["residual_mean"] = group.mean;
    g["residual_se"] = group.se;
    g["count"] = group.count;
    groups.push_back(std::move(g));
  }
  out["groups"] = std::move(groups);
  return out;
}

ordered_json json_reference_values() {
  ordered_json refs = ordered_json::array();
  for (const ReferenceExponents& ref : reference_exponents()) {
    ordered_json r;
    r["dimension"] = ref.dimension;
    r["source"] = ref.source;
    r["one_over_delta"] = ref.one_over_delta;
    if (ref.one_over_delta_error > 0.0) r["one_over_delta_error"] = ref.one_over_delta_error;
    r["gamma"] = ref.gamma;
    if (ref.gamma_error > 0.0) r["gamma_error"] = ref.gamma_error;
    refs.push_back(std::move(r));
  }
  return refs;
}

// ---------------------------------------------------------------------------
// exponents

void print_reference_block(int d) {
  for (const ReferenceExponents& ref : reference_exponents()) {
    if (ref.dimension != d) continue;
    std::cout << "  " << ref.source << ": 1/delta = " << ref.one_over_delta;
    if (ref.one_over_delta_error > 0.0) std::cout << " +- " << ref.one_over_delta_error;
    std::cout << ", gamma = " << ref.gamma;
    if (ref.gamma_error > 0.0) std::cout << " +- " << ref.gamma_error;
    std::cout << "\n";
  }
}

}  // namespace

void run_exponents(int d, int p) {
  const CriticalExponents e = critical_exponents(d, p);
  std::cout << "critical exponents for d=" << d << ", p=" << p << "\n";
  std::cout << "  beta         = " << e.beta.str() << " = " << format_double(e.beta.value())
            << "   (f_R ~ Delta^beta)\n";
  std::cout << "  1/delta      = " << e.one_over_delta.str() << " = "
            << format_double(e.one_over_delta.value()) << "   (f_R ~ alpha^{1/delta})\n";
  std::cout << "  gamma        = " << e.gamma.str() << " = " << format_double(e.gamma.value())
            << "   (g_R ~ alpha^gamma)\n";
  std::cout << "  z            = " << e.z.str() << "   (tau ~ xi^z)\n";
  std::cout << "  nu (derived) = " << e.nu.str() << " = " << format_double(e.nu.value())
            << "\n";
  std::cout << "tabulated reference values, d=3 (p=6):\n";
  print_reference_block(3);
  std::cout << "tabulated reference values, d=1 (p=6):\n";
  print_reference_block(1);
}

// ---------------------------------------------------------------------------
// eos

void run_eos(const EosGrid& grid, const std::string& out_dir) {
  if (grid.delta_points < 1) throw ConfigError("delta_points must be >= 1");
  const std::vector<double> alphas = log_grid(grid.alpha_min, grid.alpha_max, grid.alpha_points);
  std::vector<double> deltas;
  if (grid.delta_points == 1) {
    deltas.push_back(grid.delta_min);
  } else {
    for (int i = 0; i < grid.delta_points; ++i)
      deltas.push_back(grid.delta_min +
                       (grid.delta_max - grid.delta_min) * i / (grid.delta_points - 1));
  }

  const std::string csv_path = out_file(out_dir, "eos.csv");
  std::ofstream out(csv_path);
  if (!out) throw IoError("cannot write " + csv_path);
  out << "# mean-field equation of state, d=" << grid.d << " p=" << grid.p << "\n";
  out << "alpha,delta,f_R,saturated\n";
  for (double delta : deltas)
    for (double alpha : alphas) {
      const EosSolution sol = eos_solve(alpha, delta, grid.d, grid.p);
      out << format_double(alpha) << "," << format_double(delta) << ","
          << format_double(sol.f_R) << "," << (sol.saturated ? 1 : 0) << "\n";
    }
  write_gnuplot_stub(out_dir, "plot_eos.gp",
                     "set xlabel 'alpha'\nset ylabel 'f_R'\n"
                     "plot 'eos.csv' using 1:3 with points title 'f_R'\n");
  std::cout << "wrote " << csv_path << "\n";
}

// ---------------------------------------------------------------------------
// simulate / sweep share the job setup

namespace {

struct SimulationSetup {
  DisorderJob job;
  std::string basis_mode;  // full | truncated | adaptive
  AdaptiveOptions adaptive;
  std::map<std::string, std::string> resolved;
};

// Reads the run description, applying defaults, and records every resolved
// value so the manifest can reproduce the run.
SimulationSetup load_simulation(const Config& config, const CommonOptions& options,
                                bool needs_alpha) {
  config.require_schema();
  SimulationSetup setup;
  DisorderJob& job = setup.job;

  job.params.dimension = static_cast<int>(config.get_int("model.d", 3));
  job.params.interaction_exponent = static_cast<int>(config.get_int("model.p", 6));
  job.params.alpha = needs_alpha ? config.get_number("model.alpha") : 0.0;
  job.params.delta = config.get_number("model.delta", 0.0);
  if (needs_alpha) job.params.validate();

  job.atom_count = static_cast<int>(config.get_int("ensemble.n_atoms"));
  const std::string geometry = config.get_string("ensemble.geometry", "periodic");
  if (geometry == "periodic") {
    job.ensemble.kind = GeometryKind::periodic_box;
  } else if (geometry == "gaussian") {
    job.ensemble.kind = GeometryKind::open_gaussian;
    job.ensemble.sigmas[0] = config.get_number("ensemble.sigma_x");
    job.ensemble.sigmas[1] = config.get_number("ensemble.sigma_y", job.ensemble.sigmas[0]);
    job.ensemble.sigmas[2] = config.get_number("ensemble.sigma_z", job.ensemble.sigmas[0]);
  } else {
    throw ConfigError("ensemble.geometry must be periodic or gaussian");
  }
  job.ensemble.r_min = config.get_number("ensemble.r_min", default_r_min);
  job.realizations = static_cast<int>(config.get_int("ensemble.realizations", 1));

  setup.basis_mode = config.get_string("basis.mode", "adaptive");
  const int n_max = static_cast<int>(
      config.get_int("basis.n_max", std::min<long long>(job.atom_count, 2)));
  if (setup.basis_mode == "full") {
    job.basis = BasisSpec::full_basis(job.atom_count);
  } else if (setup.basis_mode == "truncated") {
    job.basis = BasisSpec::truncated(job.atom_count, n_max);
  } else if (setup.basis_mode == "adaptive") {
    job.basis = BasisSpec::truncated(job.atom_count, std::min(n_max, job.atom_count));
    setup.adaptive.n_max_start = job.basis.n_max;
    setup.adaptive.plateau_rel_tol = config.get_number("basis.plateau_tol", 0.01);
  } else {
    throw ConfigError("basis.mode must be full, truncated or adaptive");
  }

  const int points = static_cast<int>(config.get_int("time.points", 80));
  const std::string grid_kind = config.get_string("time.grid", "log_linear");
  double t_max = 0.0;
  const std::string t_max_text = config.get_string("time.t_max", "auto");
  if (t_max_text != "auto") t_max = config.get_number("time.t_max");
  if (needs_alpha && t_max == 0.0) {
    // saturation window from the collective Rabi period
    const SuperatomEstimate est =
        superatom_estimate(job.params.alpha, job.params.dimension,
                           job.params.interaction_exponent);
    t_max = 6.0 * std::numbers::pi / est.collective_rabi;
  }
  if (needs_alpha) job.times = make_time_grid(t_max, points, grid_kind == "log_linear");

  job.propagator.tol = config.get_number("propagator.tol", 1e-8);
  job.master_seed = options.seed_given ? options.seed : config.get_seed("seed", 1);
  job.threads = options.threads;

  auto& resolved = setup.resolved;
  resolved["schema"] = "1";
  resolved["model.d"] = std::to_string(job.params.dimension);
  resolved["model.p"] = std::to_string(job.params.interaction_exponent);
  if (needs_alpha) resolved["model.alpha"] = format_double(job.params.alpha);
  resolved["model.delta"] = format_double(job.params.delta);
  resolved["ensemble.n_atoms"] = std::to_string(job.atom_count);
  resolved["ensemble.geometry"] = geometry;
  if (geometry == "gaussian") {
    resolved["ensemble.sigma_x"] = format_double(job.ensemble.sigmas[0]);
    resolved["ensemble.sigma_y"] = format_double(job.ensemble.sigmas[1]);
    resolved["ensemble.sigma_z"] = format_double(job.ensemble.sigmas[2]);
  }
  resolved["ensemble.r_min"] = format_double(job.ensemble.r_min);
  resolved["ensemble.realizations"] = std::to_string(job.realizations);
  resolved["basis.mode"] = setup.basis_mode;
  resolved["basis.n_max"] = std::to_string(job.basis.n_max);
  if (setup.basis_mode == "adaptive")
    resolved["basis.plateau_tol"] = format_double(setup.adaptive.plateau_rel_tol);
  resolved["time.points"] = std::to_string(points);
  resolved["time.grid"] = grid_kind;
  if (needs_alpha) resolved["time.t_max"] = format_double(t_max);
  resolved["propagator.tol"] = format_double(job.propagator.tol);
  resolved["seed"] = std::to_string(job.master_seed);
  return setup;
}

ExcitationTrajectory run_job(const SimulationSetup& setup) {
  if (setup.basis_mode == "adaptive")
    return disorder_average_adaptive(setup.job, setup.adaptive).trajectory;
  return disorder_average(setup.job);
}

}  // namespace

void run_simulate(const CommonOptions& options) {
  const Config config = Config::parse_file(options.config_path);
  SimulationSetup setup = load_simulation(config, options, true);
  const ExcitationTrajectory trajectory = run_job(setup);

  const std::string csv_path = out_file(options.out_dir, "trajectory.csv");
  write_trajectory_csv(csv_path, trajectory);

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.config = setup.resolved;
  manifest.outputs = {"trajectory.csv"};
  write_manifest(out_file(options.out_dir, "manifest.json"), manifest);
  std::cout << "wrote " << csv_path << "\n";
}

// ---------------------------------------------------------------------------
// sweep

void run_sweep(const CommonOptions& options) {
  const Config config = Config::parse_file(options.config_path);
  SimulationSetup base = load_simulation(config, options, false);
  config.require_schema();

  const double alpha_min = config.get_number("sweep.alpha_min");
  const double alpha_max = config.get_number("sweep.alpha_max");
  const int points = static_cast<int>(config.get_int("sweep.points"));
  const std::string routes = config.get_string("sweep.routes", "both");
  if (routes != "drive" && routes != "density" && routes != "both")
    throw ConfigError("sweep.routes must be drive, density or both");
  const int group_count = routes == "both" ? 2 : 1;

  base.resolved["sweep.alpha_min"] = format_double(alpha_min);
  base.resolved["sweep.alpha_max"] = format_double(alpha_max);
  base.resolved["sweep.points"] = std::to_string(points);
  base.resolved["sweep.routes"] = routes;

  const int d = base.job.params.dimension;
  const int p = base.job.params.interaction_exponent;
  const int time_points = static_cast<int>(config.get_int("time.points", 80));
  const bool log_linear = config.get_string("time.grid", "log_linear") == "log_linear";

  std::vector<std::vector<ScalingPoint>> groups(group_count);
  ordered_json point_table = ordered_json::array();

  for (int g = 0; g < group_count; ++g) {
    const std::string route =
        routes == "both" ? (g == 0 ? "drive" : "density") : routes;
    // the density route samples interleaved alphas so the groups are
    // genuinely distinct data sets
    const double shift = (group_count == 2 && g == 1)
                             ? std::pow(alpha_max / alpha_min, 0.5 / (points - 1))
                             : 1.0;
    for (int i = 0; i < points; ++i) {
      const double alpha =
          alpha_min * shift *
          std::pow(alpha_max / alpha_min, static_cast<double>(i) / (points - 1));
      DisorderJob job = base.job;
      job.params.alpha = alpha;
      job.params.validate();
      const SuperatomEstimate est = superatom_estimate(alpha, d, p);
      job.times = make_time_grid(6.0 * std::numbers::pi / est.collective_rabi, time_points,
                                 log_linear);
      job.master_seed = mix_seed(base.job.master_seed, 1000003ULL * g + i);

      SimulationSetup setup = base;
      setup.job = std::move(job);
      const ExcitationTrajectory trajectory = run_job(setup);

      // counts N_R(tau) = N f_R(tau) for the saturation fit
      std::vector<double> fit_times, counts;
      for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        if (trajectory.times[k] == 0.0) continue;
        fit_times.push_back(trajectory.times[k]);
        counts.push_back(trajectory.f_mean[k] * setup.job.atom_count);
      }
      const SaturationFit fit = fit_saturation(fit_times, counts);
      const std::string run_id = route + "-" + std::to_string(i);
      ScalingPoint point = rescale_dimensionless(setup.job.atom_count, fit.rate,
                                                 fit.saturation, alpha, run_id);
      // provenance: how this alpha would be reached in the lab
      if (route == "density") {
        point.rabi_frequency = 1.0;
        point.density = std::pow(1.0 / alpha, static_cast<double>(d) / p);
      }
      groups[g].push_back(point);

      ordered_json row;
      row["run_id"] = run_id;
      row["alpha"] = alpha;
      row["rate"] = fit.rate;
      row["rate_stderr"] = fit.rate_stderr;
      row["saturation"] = fit.saturation;
      row["saturation_stderr"] = fit.saturation_stderr;
      row["fit_converged"] = fit.converged;
      row["g_R"] = point.g_R;
      row["f_R"] = point.f_R;
      point_table.push_back(std::move(row));
    }
  }

  std::vector<ScalingPoint> all_points;
  for (const auto& group : groups)
    all_points.insert(all_points.end(), group.begin(), group.end());
  const std::string scaling_path = out_file(options.out_dir, "scaling.csv");
  write_scaling_csv(scaling_path, all_points);

  std::vector<double> alphas, fractions, rates;
  for (const ScalingPoint& point : all_points) {
    alphas.push_back(point.alpha);
    fractions.push_back(point.f_R);
    rates.push_back(point.g_R);
  }
  const PowerLawFit fraction_fit = fit_powerlaw(alphas, fractions);
  const PowerLawFit rate_fit = fit_powerlaw(alphas, rates);

  ordered_json report;
  report["schema_version"] = 1;
  report["model"] = {{"d", d}, {"p", p}, {"delta", base.job.params.delta}};
  report["points"] = std::move(point_table);
  report["fraction_fit"] = json_powerlaw(fraction_fit);
  report["rate_fit"] = json_powerlaw(rate_fit);
  if (group_count >= 2) {
    report["fraction_collapse"] =
        json_collapse(collapse_quality(groups, ScalingObservable::saturated_fraction));
    report["rate_collapse"] =
        json_collapse(collapse_quality(groups, ScalingObservable::excitation_rate));
  }
  report["reference_exponents"] = json_reference_values();
  const std::string report_path = out_file(options.out_dir, "fit_report.json");
  std::ofstream report_out(report_path);
  if (!report_out) throw IoError("cannot write " + report_path);
  report_out << report.dump(2) << "\n";

  write_gnuplot_stub(options.out_dir, "plot_scaling.gp",
                     "set xlabel 'alpha'\nset ylabel 'f_R, g_R'\n"
                     "plot 'scaling.csv' using 1:3 with points title 'f_R', \\\n"
                     "     'scaling.csv' using 1:2 with points title 'g_R'\n");

  RunManifest manifest;
  manifest.command = "sweep";
  manifest.config = base.resolved;
  manifest.outputs = {"scaling.csv", "fit_report.json", "plot_scaling.gp"};
  write_manifest(out_file(options.out_dir, "manifest.json"), manifest);
  std::cout << "wrote " << scaling_path << " and " << report_path << "\n";
  std::cout << "fitted 1/delta = " << format_double(fraction_fit.exponent) << " +- "
            << format_double(fraction_fit.exponent_stderr) << "\n";
  std::cout << "fitted gamma   = " << format_double(rate_fit.exponent) << " +- "
            << format_double(rate_fit.exponent_stderr) << "\n";
}

// ---------------------------------------------------------------------------
// collapse (external data)

void run_collapse(const CommonOptions& options, const std::string& data_path) {
  const Config config = Config::parse_file(options.config_path);
  config.require_schema();
  PhysicalParams context;
  context.dimension = static_cast<int>(config.get_int("model.d", 3));
  context.interaction_exponent = static_cast<int>(config.get_int("model.p", 6));
  context.interaction_coefficient = config.get_c6("physical.c6");
  context.atom_number = 1;
  context.rabi_frequency = 1.0;
  context.density = 1.0;

  const auto runs = read_external_runs(data_path, context.dimension);
  std::map<double, std::vector<ScalingPoint>> by_density;
  ordered_json point_table = ordered_json::array();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const ExternalRun& run = runs[r];
    if (run.times.size() < 4)
      throw ConfigError("run " + std::to_string(r) + " has fewer than 4 samples");
    const SaturationFit fit = fit_saturation(run.times, run.counts);
    ScalingPoint point = rescale_physical(run.density, run.rabi_frequency, run.atom_number,
                                          fit.rate, fit.saturation, context);
    point.run_id = "run-" + std::to_string(r);
    by_density[run.density].push_back(point);

    ordered_json row;
    row["run_id"] = point.run_id;
    row["density"] = run.density;
    row["rabi_frequency"] = run.rabi_frequency;
    row["alpha"] = point.alpha;
    row["rate"] = fit.rate;
    row["saturation"] = fit.saturation;
    row["g_R"] = point.g_R;
    row["f_R"] = point.f_R;
    row["saturation_unconstrained"] = fit.saturation_unconstrained;
    point_table.push_back(std::move(row));
  }

  std::vector<std::vector<ScalingPoint>> groups;
  std::vector<ScalingPoint> all_points;
  for (const auto& [density, group] : by_density) {
    groups.push_back(group);
    all_points.insert(all_points.end(), group.begin(), group.end());
  }

  const std::string scaling_path = out_file(options.out_dir, "scaling.csv");
  write_scaling_csv(scaling_path, all_points);

  std::vector<double> alphas, fractions, rates;
  for (const ScalingPoint& point : all_points) {
    alphas.push_back(point.alpha);
    fractions.push_back(point.f_R);
    rates.push_back(point.g_R);
  }

  ordered_json report;
  report["schema_version"] = 1;
  report["model"] = {{"d", context.dimension}, {"p", context.interaction_exponent}};
  report["points"] = std::move(point_table);
  report["fraction_fit"] = json_powerlaw(fit_powerlaw(alphas, fractions));
  report["rate_fit"] = json_powerlaw(fit_powerlaw(alphas, rates));
  if (groups.size() >= 2) {
    report["fraction_collapse"] =
        json_collapse(collapse_quality(groups, ScalingObservable::saturated_fraction));
    report["rate_collapse"] =
        json_collapse(collapse_quality(groups, ScalingObservable::excitation_rate));
  }
  report["reference_exponents"] = json_reference_values();
  const std::string report_path = out_file(options.out_dir, "fit_report.json");
  std::ofstream report_out(report_path);
  if (!report_out) throw IoError("cannot write " + report_path);
  report_out << report.dump(2) << "\n";
  std::cout << "wrote " << scaling_path << " and " << report_path << "\n";
}

// ---------------------------------------------------------------------------
// lda

void run_lda(const CommonOptions& options) {
  const Config config = Config::parse_file(options.config_path);
  config.require_schema();
  const int d = static_cast<int>(config.get_int("model.d", 3));
  const int p = static_cast<int>(config.get_int("model.p", 6));

  CloudSpec cloud;
  cloud.sigmas[0] = config.get_length("cloud.sigma_x");
  cloud.sigmas[1] = d >= 2 ? config.get_length("cloud.sigma_y") : cloud.sigmas[0];
  cloud.sigmas[2] = d >= 3 ? config.get_length("cloud.sigma_z") : cloud.sigmas[0];
  cloud.atom_number = config.get_number("cloud.atom_number");

  std::vector<double> alpha_peaks;
  if (config.has("lda.alpha_min")) {
    alpha_peaks = log_grid(config.get_number("lda.alpha_min"),
                           config.get_number("lda.alpha_max"),
                           static_cast<int>(config.get_int("lda.points", 10)));
  } else {
    // physical route: alpha at the trap-center density
    PhysicalParams phys;
    phys.rabi_frequency = config.get_angular_frequency("physical.omega");
    phys.interaction_coefficient = config.get_c6("physical.c6");
    phys.density = cloud.peak_density(d);
    phys.dimension = d;
    phys.interaction_exponent = p;
    phys.atom_number = std::max(1L, static_cast<long>(cloud.atom_number));
    alpha_peaks.push_back(nondimensionalize(phys).alpha);
  }

  const std::string csv_path = out_file(options.out_dir, "lda.csv");
  std::ofstream out(csv_path);
  if (!out) throw IoError("cannot write " + csv_path);
  out << "# cloud-averaged Rydberg fraction, d=" << d << " p=" << p << "\n";
  out << "alpha_peak,f_R,prefactor,validity_warning\n";
  for (double alpha : alpha_peaks) {
    const LdaResult result = lda_average(cloud, alpha, d, p);
    out << format_double(alpha) << "," << format_double(result.f_R) << ","
        << format_double(result.prefactor) << "," << (result.validity_warning ? 1 : 0)
        << "\n";
  }

  RunManifest manifest;
  manifest.command = "lda";
  for (const auto& [key, value] : config.entries()) manifest.config[key] = value;
  manifest.outputs = {"lda.csv"};
  write_manifest(out_file(options.out_dir, "manifest.json"), manifest);
  std::cout << "wrote " << csv_path << "\n";
}

}  // namespace ryd::cli
