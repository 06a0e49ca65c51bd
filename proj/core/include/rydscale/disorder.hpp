#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rydscale/basis.hpp"
#include "rydscale/ensemble.hpp"
#include "rydscale/params.hpp"
#include "rydscale/propagator.hpp"

namespace ryd {

// How each disorder realization draws its atom positions. Periodic boxes at
// unit density for bulk scaling runs; Gaussian clouds for trap comparisons.
struct EnsembleSpec {
  GeometryKind kind = GeometryKind::periodic_box;
  std::array<double, 3> sigmas{0.0, 0.0, 0.0};
  double r_min = default_r_min;
};

// Disorder-averaged f_R(tau) with per-time standard errors.
struct ExcitationTrajectory {
  std::vector<double> times;
  std::vector<double> f_mean;
  std::vector<double> f_stderr;
  int realization_count = 0;
};

struct DisorderJob {
  ModelParams params;
  int atom_count = 0;
  EnsembleSpec ensemble;
  BasisSpec basis;
  std::vector<double> times;
  PropagatorOptions propagator;
  std::uint64_t master_seed = 0;
  int realizations = 1;
  int threads = 1;  // affects speed only, never results
};

// Mean and standard error over independent configurations seeded with
// mix_seed(master_seed, k). The reduction order is fixed, so the result is
// independent of thread scheduling.
ExcitationTrajectory disorder_average(const DisorderJob& job);

// Excitation-number truncation, raised until the trajectory stops moving:
// stop once the relative saturation-plateau change drops below
// plateau_rel_tol, or the largest pointwise change drops below
// pointwise_abs_tol, whichever binds first. n_max = N is the full basis, so
// the rule always terminates.
struct AdaptiveOptions {
  int n_max_start = 1;
  double plateau_rel_tol = 0.01;
  double pointwise_abs_tol = std::numeric_limits<double>::infinity();
  double plateau_window = 0.25;  // trailing fraction of the grid defining the plateau
};

struct AdaptiveTrajectory {
  SingleTrajectory trajectory;
  int n_max = 0;
  double plateau_change = 0.0;    // between the last two levels tried
  double pointwise_change = 0.0;
};

AdaptiveTrajectory propagate_adaptive(const AtomConfiguration& config, const ModelParams& params,
                                      std::span<const double> times,
                                      const PropagatorOptions& opts = {},
                                      const AdaptiveOptions& adaptive = {});

struct AdaptiveDisorderResult {
  ExcitationTrajectory trajectory;
  int max_n_max = 0;  // largest truncation level any realization needed
};

// disorder_average with per-realization adaptive truncation (the job's
// basis spec supplies atom_count; its mode is ignored).
AdaptiveDisorderResult disorder_average_adaptive(const DisorderJob& job,
                                                 const AdaptiveOptions& adaptive = {});

double saturation_plateau(std::span<const double> values, double window = 0.25);

}  // namespace ryd
