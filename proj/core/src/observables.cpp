#include "rydscale/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ryd {

double rydberg_fraction(const Basis& basis, const Eigen::VectorXcd& amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis.size())
    throw std::invalid_argument("amplitude vector does not match the basis");
  double weighted = 0.0;
  for (std::size_t s = 0; s < basis.size(); ++s)
    weighted += std::norm(amplitudes[static_cast<Eigen::Index>(s)]) * basis.excitations(s);
  return weighted / basis.atom_count();
}

double rydberg_fraction(const ManyBodyState& state) {
  return rydberg_fraction(*state.basis, state.amplitudes);
}

BinnedCorrelation pair_correlation(const ManyBodyState& state, const AtomConfiguration& config,
                                   std::span<const double> bin_edges) {
  if (!state.basis) throw std::invalid_argument("state has no basis");
  const Basis& basis = *state.basis;
  const int n = basis.atom_count();
  if (config.atom_count() != n)
    throw std::invalid_argument("configuration does not match the state basis");
  if (bin_edges.size() < 2) throw std::invalid_argument("need at least one bin");
  if (!std::is_sorted(bin_edges.begin(), bin_edges.end()))
    throw std::invalid_argument("bin edges must be increasing");

  // <P_i P_j> for every pair, one sweep over the basis.
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const double w = std::norm(state.amplitudes[static_cast<Eigen::Index>(s)]);
    if (w == 0.0) continue;
    std::uint64_t rest = basis.state(s);
    while (rest) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      std::uint64_t rest2 = rest;
      while (rest2) {
        const int j = std::countr_zero(rest2);
        rest2 &= rest2 - 1;
        joint(i, j) += w;
        joint(j, i) += w;
      }
    }
  }
  const double f = rydberg_fraction(state);
  const double f2 = f * f;

  const std::size_t n_bins = bin_edges.size() - 1;
  std::vector<double> sums(n_bins, 0.0);
  std::vector<std::size_t> counts(n_bins, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double r = pair_distance(config, i, j);
      const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), r);
      if (it == bin_edges.begin() || it == bin_edges.end()) continue;
      const std::size_t bin = static_cast<std::size_t>(it - bin_edges.begin()) - 1;
      sums[bin] += joint(i, j) - f2;
      counts[bin] += 1;
    }
  }

  BinnedCorrelation out;
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (counts[b] == 0) continue;
    out.bin_centers.push_back(0.5 * (bin_edges[b] + bin_edges[b + 1]));
    out.values.push_back(sums[b] / static_cast<double>(counts[b]));
    out.pair_counts.push_back(counts[b]);
  }
  return out;
}

std::optional<double> estimate_blockade_radius(const BinnedCorrelation& correlation) {
  const std::size_t n = correlation.values.size();
  if (n < 3) throw std::invalid_argument("need at least 3 occupied bins");

  const std::size_t quartile = std::max<std::size_t>(1, n / 4);
  double plateau = 0.0;
  for (std::size_t b = n - quartile; b < n; ++b) plateau += correlation.values[b];
  plateau /= static_cast<double>(quartile);

  const double depth = correlation.values.front();
  double scale = 0.0;
  for (double v : correlation.values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || std::abs(depth - plateau) <= 1e-12 * scale) return std::nullopt;

  const double half_gap = std::abs(depth - plateau) / 2.0;
  for (std::size_t b = 0; b < n; ++b) {
    if (std::abs(correlation.values[b] - plateau) <= half_gap) return correlation.bin_centers[b];
  }
  return std::nullopt;
}

}  // namespace ryd
