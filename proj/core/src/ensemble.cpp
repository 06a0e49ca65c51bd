#include "rydscale/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "rydscale/errors.hpp"
#include "rydscale/rng.hpp"

namespace ryd {

namespace {

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b, int dim,
                double box_side) {
  double sq = 0.0;
  for (int c = 0; c < dim; ++c) {
    double dx = a[c] - b[c];
    if (box_side > 0.0) dx -= box_side * std::round(dx / box_side);
    sq += dx * dx;
  }
  return std::sqrt(sq);
}

// Rejection-sample positions with a hard minimum pair separation.
void fill_with_min_separation(AtomConfiguration& config, int n_atoms, double r_min,
                              Rng& rng, const auto& draw_point) {
  const double box = config.geometry.kind == GeometryKind::periodic_box
                         ? config.geometry.box_side
                         : 0.0;
  const long max_attempts = 10'000L * n_atoms + 10'000L;
  long attempts = 0;
  config.positions.reserve(n_atoms);
  while (config.atom_count() < n_atoms) {
    if (++attempts > max_attempts)
      throw NonconvergenceError(
          "sampling failed: could not place " + std::to_string(n_atoms) +
          " atoms with r_min = " + std::to_string(r_min) + " (overconstrained packing)");
    std::array<double, 3> candidate = draw_point(rng);
    bool ok = true;
    if (r_min > 0.0) {
      for (const auto& q : config.positions) {
        if (distance(candidate, q, config.dimension, box) < r_min) {
          ok = false;
          break;
        }
      }
    }
    if (ok) config.positions.push_back(candidate);
  }
}

}  // namespace

AtomConfiguration sample_uniform(int n_atoms, int dimension, std::uint64_t seed, double r_min) {
  if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
  if (dimension < 1 || dimension > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (r_min < 0.0) throw std::invalid_argument("r_min must be >= 0");

  AtomConfiguration config;
  config.dimension = dimension;
  config.seed = seed;
  config.geometry.kind = GeometryKind::periodic_box;
  config.geometry.box_side = std::pow(static_cast<double>(n_atoms), 1.0 / dimension);

  const double side = config.geometry.box_side;
  Rng rng(seed);
  fill_with_min_separation(config, n_atoms, r_min, rng, [&](Rng& r) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int c = 0; c < dimension; ++c) x[c] = r.uniform(0.0, side);
    return x;
  });
  return config;
}

AtomConfiguration sample_gaussian_cloud(int n_atoms, std::span<const double> sigmas,
                                        std::uint64_t seed, double r_min) {
  if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
  const int dimension = static_cast<int>(sigmas.size());
  if (dimension < 1 || dimension > 3)
    throw std::invalid_argument("sigmas must have 1, 2 or 3 components");
  for (double s : sigmas)
    if (!(s > 0.0)) throw std::invalid_argument("all sigmas must be > 0");
  if (r_min < 0.0) throw std::invalid_argument("r_min must be >= 0");

  AtomConfiguration config;
  config.dimension = dimension;
  config.seed = seed;
  config.geometry.kind = GeometryKind::open_gaussian;
  for (int c = 0; c < dimension; ++c) config.geometry.sigmas[c] = sigmas[c];

  Rng rng(seed);
  fill_with_min_separation(config, n_atoms, n_atoms > 1 ? r_min : 0.0, rng, [&](Rng& r) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int c = 0; c < dimension; ++c) x[c] = sigmas[c] * r.normal();
    return x;
  });
  return config;
}

double pair_distance(const AtomConfiguration& config, int i, int j) {
  const int n = config.atom_count();
  if (i < 0 || i >= n || j < 0 || j >= n) throw std::out_of_range("pair_distance: index out of range");
  const double box = config.geometry.kind == GeometryKind::periodic_box
                         ? config.geometry.box_side
                         : 0.0;
  return distance(config.positions[i], config.positions[j], config.dimension, box);
}

}  // namespace ryd
