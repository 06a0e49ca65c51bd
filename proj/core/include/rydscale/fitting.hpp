#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace ryd {

// Least-squares fit of the exponential saturation curve
//   N(t) = N_sat (1 - e^{-R t / N_sat})
// extracting the initial rate R and the saturation level N_sat.
struct SaturationFit {
  double rate = 0.0;
  double saturation = 0.0;
  double rate_stderr = 0.0;
  double saturation_stderr = 0.0;
  double residual_norm = 0.0;  // sqrt(sum of squared residuals)
  int iterations = 0;
  bool converged = false;
  // Set when the data never leave the linear regime: R is determined but the
  // saturation level's standard error exceeds the value itself.
  bool saturation_unconstrained = false;
};

SaturationFit fit_saturation(std::span<const double> times, std::span<const double> counts,
                             std::optional<std::pair<double, double>> initial_guess = {});

// Ordinary least squares on (ln x, ln y).
struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;  // natural-log space
  double exponent_stderr = 0.0;
  double intercept_stderr = 0.0;
  double r_squared = 0.0;
  int point_count = 0;
};

PowerLawFit fit_powerlaw(std::span<const double> x, std::span<const double> y);

// Inverse-variance weighting in log space; reduces to the unweighted fit
// when all weights are equal.
PowerLawFit fit_powerlaw_weighted(std::span<const double> x, std::span<const double> y,
                                  std::span<const double> weights);

// Resampling alternative to the regression standard error, for points that
// came from disorder-averaged simulation data.
double bootstrap_exponent_stderr(std::span<const double> x, std::span<const double> y,
                                 int resamples, std::uint64_t seed);

}  // namespace ryd
