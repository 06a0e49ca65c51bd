#include "rydscale/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "rydscale/constants.hpp"

namespace ryd {

ScalingPoint rescale_physical(double density, double rabi_frequency, double atom_number,
                              double rate, double saturation_count,
                              const PhysicalParams& context) {
  if (!(density > 0.0) || !(rabi_frequency > 0.0) || !(atom_number > 0.0) || !(rate > 0.0) ||
      !(saturation_count > 0.0))
    throw std::invalid_argument("rescale_physical requires positive inputs");

  PhysicalParams run = context;
  run.density = density;
  run.rabi_frequency = rabi_frequency;
  run.validate();
  const double ec = characteristic_energy(run);

  ScalingPoint point;
  point.alpha = nondimensionalize(run).alpha;
  point.g_R = constants::hbar_Js * rate / (atom_number * ec);
  point.f_R = saturation_count / atom_number;
  point.density = density;
  point.rabi_frequency = rabi_frequency;
  return point;
}

ScalingPoint rescale_dimensionless(double atom_number, double rate, double saturation_count,
                                   double alpha, std::string run_id) {
  if (!(atom_number > 0.0) || !(rate > 0.0) || !(saturation_count > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("rescale_dimensionless requires positive inputs");
  ScalingPoint point;
  point.alpha = alpha;
  point.g_R = rate / atom_number;
  point.f_R = saturation_count / atom_number;
  point.run_id = std::move(run_id);
  point.density = 1.0;
  point.rabi_frequency = alpha;  // natural units
  return point;
}

CollapseReport collapse_quality(const std::vector<std::vector<ScalingPoint>>& groups,
                                ScalingObservable observable) {
  if (groups.size() < 2) throw std::invalid_argument("need at least 2 groups");

  std::vector<double> x, y;
  std::vector<std::size_t> group_of;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const ScalingPoint& point : groups[g]) {
      const double value =
          observable == ScalingObservable::saturated_fraction ? point.f_R : point.g_R;
      x.push_back(point.alpha);
      y.push_back(value);
      group_of.push_back(g);
    }
  }
  if (x.size() < 3) throw std::invalid_argument("need at least 3 points in total");

  CollapseReport report;
  report.pooled = fit_powerlaw(x, y);

  std::vector<std::vector<double>> residuals(groups.size());
  double pooled_ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r =
        std::log(y[i]) - (report.pooled.intercept + report.pooled.exponent * std::log(x[i]));
    residuals[group_of[i]].push_back(r);
    pooled_ss += r * r;
  }
  report.rms_log_residual = std::sqrt(pooled_ss / static_cast<double>(x.size()));

  report.collapse = true;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    GroupResidual stat;
    stat.label = "group" + std::to_string(g);
    stat.count = static_cast<int>(residuals[g].size());
    if (stat.count == 0) throw std::invalid_argument("empty group");
    double mean = 0.0;
    for (double r : residuals[g]) mean += r;
    mean /= stat.count;
    stat.mean = mean;
    if (stat.count > 1) {
      double ss = 0.0;
      for (double r : residuals[g]) ss += (r - mean) * (r - mean);
      stat.se = std::sqrt(ss / (static_cast<double>(stat.count) * (stat.count - 1)));
    } else {
      stat.se = report.rms_log_residual;  // single point: fall back on the pooled scatter
    }
    // An exact power law leaves zero residuals; call that collapsed even
    // though 0 <= 2*0 is degenerate.
    const bool group_ok =
        std::abs(stat.mean) <= 2.0 * stat.se || std::abs(stat.mean) < 1e-12;
    report.collapse = report.collapse && group_ok;
    report.groups.push_back(std::move(stat));
  }
  return report;
}

std::vector<ReferenceExponents> reference_exponents() {
  return {
      {3, "experiment", 0.45, 0.01, 1.25, 0.03},
      {3, "simulation", 0.404, 0.0, 1.15, 0.0},
      {1, "experiment", 0.16, 0.01, 1.08, 0.01},
      {1, "simulation", 0.150, 0.0, 1.06, 0.0},
  };
}

}  // namespace ryd
