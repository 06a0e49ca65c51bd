#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "rydscale/ensemble.hpp"
#include "rydscale/state.hpp"

namespace ryd {

// f_R = (1/N) sum_i <P_ee^(i)>
double rydberg_fraction(const Basis& basis, const Eigen::VectorXcd& amplitudes);
double rydberg_fraction(const ManyBodyState& state);

// Connected pair correlation <P_ee^(i) P_ee^(j)> - f_R^2, averaged over the
// atom pairs falling in each radial bin. Empty bins are omitted.
struct BinnedCorrelation {
  std::vector<double> bin_centers;
  std::vector<double> values;
  std::vector<std::size_t> pair_counts;
};

BinnedCorrelation pair_correlation(const ManyBodyState& state, const AtomConfiguration& config,
                                   std::span<const double> bin_edges);

// Half-recovery estimate of the blockade radius: the smallest bin center
// where C(r) has closed half of the gap between its short-range value and
// the large-r plateau (mean of the outer quartile of occupied bins).
// Returns nullopt for a flat correlation.
std::optional<double> estimate_blockade_radius(const BinnedCorrelation& correlation);

}  // namespace ryd
