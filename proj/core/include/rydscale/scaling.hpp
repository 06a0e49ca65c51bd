#pragma once

#include <string>
#include <vector>

#include "rydscale/fitting.hpp"
#include "rydscale/params.hpp"

namespace ryd {

// One measured excitation curve reduced to dimensionless coordinates:
//   g_R = hbar R / (N C_p n^{p/d}),   f_R = N_R / N
// plus the provenance of the run it came from.
struct ScalingPoint {
  double alpha = 0.0;
  double g_R = 0.0;
  double f_R = 0.0;
  std::string run_id;
  double density = 0.0;         // provenance, n
  double rabi_frequency = 0.0;  // provenance, Omega
};

// Physical route: the context supplies C_p, d, p; rate in 1/s.
ScalingPoint rescale_physical(double density, double rabi_frequency, double atom_number,
                              double rate, double saturation_count,
                              const PhysicalParams& context);

// Dimensionless simulation route (hbar = E_c = 1): g_R = R/N, f_R = N_sat/N.
ScalingPoint rescale_dimensionless(double atom_number, double rate, double saturation_count,
                                   double alpha, std::string run_id = {});

enum class ScalingObservable { saturated_fraction, excitation_rate };

// Data-collapse score: one power law fitted to the pooled points, per-group
// means of the log residuals, and the pooled RMS. Collapse is declared when
// every group's residual mean is indistinguishable from zero (within twice
// its standard error).
struct GroupResidual {
  std::string label;
  double mean = 0.0;
  double se = 0.0;
  int count = 0;
};

struct CollapseReport {
  PowerLawFit pooled;
  std::vector<GroupResidual> groups;
  double rms_log_residual = 0.0;
  bool collapse = false;
};

CollapseReport collapse_quality(const std::vector<std::vector<ScalingPoint>>& groups,
                                ScalingObservable observable);

// Published reference exponents for report annotation (never asserted).
struct ReferenceExponents {
  int dimension;
  const char* source;  // "experiment" or "simulation"
  double one_over_delta;
  double one_over_delta_error;  // 0 when not quoted
  double gamma;
  double gamma_error;
};

std::vector<ReferenceExponents> reference_exponents();

}  // namespace ryd
