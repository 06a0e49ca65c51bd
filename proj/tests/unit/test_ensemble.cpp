#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rydscale/ensemble.hpp"
#include "rydscale/errors.hpp"
#include "rydscale/rng.hpp"

using namespace ryd;

TEST_CASE("uniform sampling respects the box and r_min") {
  const AtomConfiguration config = sample_uniform(8, 1, 7);
  CHECK(config.atom_count() == 8);
  CHECK(config.geometry.box_side == doctest::Approx(8.0));
  for (const auto& x : config.positions) {
    CHECK(x[0] >= 0.0);
    CHECK(x[0] < 8.0);
  }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < i; ++j) CHECK(pair_distance(config, i, j) >= default_r_min);
}

TEST_CASE("sampling is deterministic in the seed") {
  const AtomConfiguration a = sample_uniform(20, 3, 123);
  const AtomConfiguration b = sample_uniform(20, 3, 123);
  REQUIRE(a.positions.size() == b.positions.size());
  for (std::size_t i = 0; i < a.positions.size(); ++i)
    for (int c = 0; c < 3; ++c) CHECK(a.positions[i][c] == b.positions[i][c]);

  const AtomConfiguration c = sample_uniform(20, 3, 124);
  bool any_different = false;
  for (std::size_t i = 0; i < a.positions.size(); ++i)
    if (a.positions[i][0] != c.positions[i][0]) any_different = true;
  CHECK(any_different);
}

TEST_CASE("nearest-neighbor statistics match the Poisson law at unit density") {
  // r_min = 0 so that the analytic CDF 1 - exp(-(4/3) pi r^3) applies.
  const int n = 1000;
  const AtomConfiguration config = sample_uniform(n, 3, 2024, 0.0);
  std::vector<double> nn(n, 1e300);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) nn[i] = std::min(nn[i], pair_distance(config, i, j));
  std::sort(nn.begin(), nn.end());

  double ks = 0.0;
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = 1.0 - std::exp(-(4.0 / 3.0) * std::numbers::pi * std::pow(nn[i], 3));
    ks = std::max(ks, std::abs(cdf - (i + 1.0) / n));
    ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    mean += nn[i];
  }
  mean /= n;
  CHECK(ks < 0.06);  // ~1.63/sqrt(n) at the 1% level, with headroom
  // analytic mean: Gamma(4/3) (3/(4 pi))^{1/3} = 0.55396
  CHECK(mean == doctest::Approx(0.55396).epsilon(0.05));
}

TEST_CASE("gaussian cloud reproduces its covariance") {
  const double sigmas[3] = {1.0, 1.0, 1.0};
  const AtomConfiguration config = sample_gaussian_cloud(10000, sigmas, 99, 0.0);
  for (int c = 0; c < 3; ++c) {
    double m = 0.0, ss = 0.0;
    for (const auto& x : config.positions) m += x[c];
    m /= config.atom_count();
    for (const auto& x : config.positions) ss += (x[c] - m) * (x[c] - m);
    ss /= config.atom_count() - 1;
    CHECK(ss == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("gaussian cloud handles a single atom and anisotropy") {
  const double sigmas[3] = {1.0, 2.0, 3.0};
  const AtomConfiguration single = sample_gaussian_cloud(1, sigmas, 5);
  CHECK(single.atom_count() == 1);
  CHECK(single.geometry.kind == GeometryKind::open_gaussian);

  const AtomConfiguration a = sample_gaussian_cloud(50, sigmas, 5);
  const AtomConfiguration b = sample_gaussian_cloud(50, sigmas, 5);
  for (std::size_t i = 0; i < a.positions.size(); ++i)
    for (int c = 0; c < 3; ++c) CHECK(a.positions[i][c] == b.positions[i][c]);
}

TEST_CASE("pair distances use the minimum image under periodic boxes") {
  AtomConfiguration config;
  config.dimension = 1;
  config.geometry.kind = GeometryKind::periodic_box;
  config.geometry.box_side = 10.0;
  config.positions = {{0.5, 0.0, 0.0}, {9.5, 0.0, 0.0}};
  CHECK(pair_distance(config, 0, 1) == doctest::Approx(1.0));

  AtomConfiguration open;
  open.dimension = 3;
  open.geometry.kind = GeometryKind::open_line;
  open.positions = {{0.0, 0.0, 0.0}, {3.0, 4.0, 0.0}};
  CHECK(pair_distance(open, 0, 1) == doctest::Approx(5.0));

  CHECK_THROWS_AS(pair_distance(open, 0, 2), std::out_of_range);
  CHECK_THROWS_AS(pair_distance(open, -1, 1), std::out_of_range);
}

TEST_CASE("distance properties: symmetry, translation invariance, relabeling") {
  const AtomConfiguration config = sample_uniform(12, 3, 44);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < i; ++j)
      CHECK(pair_distance(config, i, j) == pair_distance(config, j, i));

  // translate everything by a constant vector mod L
  AtomConfiguration shifted = config;
  const double l = config.geometry.box_side;
  for (auto& x : shifted.positions)
    for (int c = 0; c < 3; ++c) x[c] = std::fmod(x[c] + 0.37 * (c + 1) + l, l);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < i; ++j)
      CHECK(pair_distance(shifted, i, j) ==
            doctest::Approx(pair_distance(config, i, j)).epsilon(1e-12));

  // relabeling leaves the multiset of distances unchanged
  AtomConfiguration relabeled = config;
  std::reverse(relabeled.positions.begin(), relabeled.positions.end());
  std::vector<double> d1, d2;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < i; ++j) {
      d1.push_back(pair_distance(config, i, j));
      d2.push_back(pair_distance(relabeled, i, j));
    }
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());
  for (std::size_t k = 0; k < d1.size(); ++k) CHECK(d1[k] == doctest::Approx(d2[k]));
}

TEST_CASE("overconstrained packing fails with a bounded-attempts error") {
  // 50 atoms on a ring of circumference 50 cannot keep spacing 1.5
  CHECK_THROWS_AS(sample_uniform(50, 1, 3, 1.5), NonconvergenceError);
}

TEST_CASE("seed mixing separates realizations") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(42, 7) == mix_seed(42, 7));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(sample_uniform(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_uniform(5, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_uniform(5, 3, 1, -0.5), std::invalid_argument);
  const double bad_sigma[2] = {1.0, -1.0};
  CHECK_THROWS_AS(sample_gaussian_cloud(5, bad_sigma, 1), std::invalid_argument);
}
