#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "rydscale/disorder.hpp"
#include "rydscale/ensemble.hpp"
#include "rydscale/hamiltonian.hpp"
#include "rydscale/observables.hpp"
#include "rydscale/propagator.hpp"
#include "rydscale/superatom.hpp"

using namespace ryd;

namespace {

ModelParams model36(double alpha, double delta) {
  ModelParams params;
  params.dimension = 3;
  params.interaction_exponent = 6;
  params.alpha = alpha;
  params.delta = delta;
  return params;
}

AtomConfiguration pair_at(double separation) {
  AtomConfiguration config;
  config.dimension = 3;
  config.geometry.kind = GeometryKind::open_line;
  config.positions = {{0.0, 0.0, 0.0}, {separation, 0.0, 0.0}};
  return config;
}

}  // namespace

TEST_CASE("product ground state has zero connected correlation") {
  const AtomConfiguration config = sample_uniform(8, 3, 4);
  const auto basis = std::make_shared<Basis>(Basis::build(BasisSpec::full_basis(8)));
  const ManyBodyState state = ground_state(basis);
  CHECK(rydberg_fraction(state) == 0.0);
  const std::vector<double> edges = {0.0, 0.5, 1.0, 1.5, 2.0};
  const BinnedCorrelation corr = pair_correlation(state, config, edges);
  for (double v : corr.values) CHECK(v == 0.0);
}

TEST_CASE("blockaded pair at the half-inversion point: C = -1/16") {
  // |psi> = cos(pi/4)|gg> + sin(pi/4)(|ge>+|eg>)/sqrt(2): f_R = 1/4,
  // <P P> = 0, so C(r_12) = -1/16 (explicit 4-dimensional state algebra).
  const auto basis = std::make_shared<Basis>(Basis::build(BasisSpec::full_basis(2)));
  ManyBodyState state;
  state.basis = basis;
  state.amplitudes = Eigen::VectorXcd::Zero(4);
  const double theta = std::numbers::pi / 4.0;
  state.amplitudes[basis->index_of(0b00)] = std::cos(theta);
  state.amplitudes[basis->index_of(0b01)] = std::sin(theta) / std::sqrt(2.0);
  state.amplitudes[basis->index_of(0b10)] = std::sin(theta) / std::sqrt(2.0);
  state.check_normalized();

  CHECK(rydberg_fraction(state) == doctest::Approx(0.25).epsilon(1e-14));
  const AtomConfiguration config = pair_at(0.1);
  const std::vector<double> edges = {0.0, 0.2};
  const BinnedCorrelation corr = pair_correlation(state, config, edges);
  REQUIRE(corr.values.size() == 1);
  CHECK(corr.values[0] == doctest::Approx(-1.0 / 16.0).epsilon(1e-14));
  CHECK(corr.pair_counts[0] == 1);
}

TEST_CASE("far-separated driven atoms factorize") {
  const double alpha = 0.1;
  const SpinHamiltonian h =
      SpinHamiltonian::build(pair_at(1000.0), model36(alpha, 0.0), BasisSpec::full_basis(2));
  const ManyBodyState evolved = evolve(h, ground_state(h.basis_ptr()), 7.3);
  const std::vector<double> edges = {999.0, 1001.0};
  const BinnedCorrelation corr = pair_correlation(evolved, pair_at(1000.0), edges);
  REQUIRE(corr.values.size() == 1);
  CHECK(std::abs(corr.values[0]) < 1e-9);
}

TEST_CASE("blockade radius from a synthetic step correlation") {
  BinnedCorrelation corr;
  for (int b = 0; b < 10; ++b) {
    corr.bin_centers.push_back(0.5 + b);
    corr.values.push_back(corr.bin_centers.back() < 5.0 ? -0.04 : 0.0);
    corr.pair_counts.push_back(3);
  }
  const auto xi = estimate_blockade_radius(corr);
  REQUIRE(xi.has_value());
  CHECK(*xi == doctest::Approx(5.5));  // first center past the step, one bin width

  BinnedCorrelation flat;
  for (int b = 0; b < 5; ++b) {
    flat.bin_centers.push_back(0.5 + b);
    flat.values.push_back(0.0);
    flat.pair_counts.push_back(2);
  }
  CHECK_FALSE(estimate_blockade_radius(flat).has_value());

  BinnedCorrelation tiny;
  tiny.bin_centers = {0.5, 1.5};
  tiny.values = {-0.1, 0.0};
  tiny.pair_counts = {1, 1};
  CHECK_THROWS_AS(estimate_blockade_radius(tiny), std::invalid_argument);
}

TEST_CASE("strongly blockaded run estimates a radius near the superatom value") {
  // N = 12 at unit density, alpha = 1e-2: xi_pred = alpha^{-2/15} ~ 1.85
  const double alpha = 1e-2;
  const AtomConfiguration config = sample_uniform(12, 3, 2718, 0.2);
  const ModelParams params = model36(alpha, 0.0);
  const SpinHamiltonian h = SpinHamiltonian::build(config, params, BasisSpec::truncated(12, 4));
  const double t_plateau = 4.0 * std::numbers::pi / superatom_estimate(alpha, 3, 6).collective_rabi;
  const ManyBodyState state = evolve(h, ground_state(h.basis_ptr()), t_plateau);

  const double r_max = std::sqrt(3.0) * config.geometry.box_side / 2.0;
  std::vector<double> edges;
  for (int b = 0; b <= 8; ++b) edges.push_back(r_max * b / 8.0);
  const BinnedCorrelation corr = pair_correlation(state, config, edges);
  REQUIRE(corr.values.size() >= 3);
  const auto xi = estimate_blockade_radius(corr);
  REQUIRE(xi.has_value());
  const double predicted = blockade_radius(alpha, 3, 6);
  CHECK(*xi >= predicted / 2.0);
  CHECK(*xi <= predicted * 2.0);
}
