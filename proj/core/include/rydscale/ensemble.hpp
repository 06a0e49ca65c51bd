#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace ryd {

enum class GeometryKind { periodic_box, open_gaussian, open_line };

struct Geometry {
  GeometryKind kind = GeometryKind::periodic_box;
  double box_side = 0.0;                    // periodic_box / open_line
  std::array<double, 3> sigmas{0.0, 0.0, 0.0};  // open_gaussian
};

// Frozen random atom positions, in units of the mean interparticle spacing
// a = n^{-1/d}. Immutable after construction; safe to share across threads.
struct AtomConfiguration {
  int dimension = 3;
  std::uint64_t seed = 0;
  Geometry geometry;
  std::vector<std::array<double, 3>> positions;  // components beyond `dimension` are zero

  int atom_count() const { return static_cast<int>(positions.size()); }
};

// Pairs closer than r_min are resampled: they are fully blockaded anyway but
// put a huge 1/r^p energy on the diagonal and make the propagator stiff.
inline constexpr double default_r_min = 0.1;

// N points uniform in a periodic box of side L = N^{1/d} (unit density).
AtomConfiguration sample_uniform(int n_atoms, int dimension, std::uint64_t seed,
                                 double r_min = default_r_min);

// N points from a normalized anisotropic Gaussian; open boundary.
AtomConfiguration sample_gaussian_cloud(int n_atoms, std::span<const double> sigmas,
                                        std::uint64_t seed, double r_min = default_r_min);

// Euclidean distance; minimum-image convention under periodic_box.
double pair_distance(const AtomConfiguration& config, int i, int j);

}  // namespace ryd
