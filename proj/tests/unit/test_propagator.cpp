#include <doctest.h>

#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>

#include "rydscale/disorder.hpp"
#include "rydscale/ensemble.hpp"
#include "rydscale/hamiltonian.hpp"
#include "rydscale/observables.hpp"
#include "rydscale/propagator.hpp"

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

AtomConfiguration single_atom() {
  AtomConfiguration config;
  config.dimension = 3;
  config.geometry.kind = GeometryKind::open_line;
  config.positions = {{0.0, 0.0, 0.0}};
  return config;
}

AtomConfiguration pair_at(double separation) {
  AtomConfiguration config;
  config.dimension = 3;
  config.geometry.kind = GeometryKind::open_line;
  config.positions = {{0.0, 0.0, 0.0}, {separation, 0.0, 0.0}};
  return config;
}

}  // namespace

TEST_CASE("single atom Rabi oscillation") {
  const double alpha = 0.3;
  const SpinHamiltonian h =
      SpinHamiltonian::build(single_atom(), model36(alpha, 0.0), BasisSpec::full_basis(1));
  const std::vector<double> times = make_time_grid(40.0, 60, false);
  const SingleTrajectory traj = propagate(h, ground_state(h.basis_ptr()), times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expected = std::pow(std::sin(alpha * times[i] / 2.0), 2);
    CHECK(traj.rydberg_fraction[i] == doctest::Approx(expected).epsilon(1e-8));
  }
  CHECK(traj.max_norm_drift <= 1e-12);
  CHECK(traj.max_energy_drift <= 1e-12);
}

TEST_CASE("single atom through the Krylov path matches the Rabi solution") {
  const double alpha = 0.3;
  const SpinHamiltonian h =
      SpinHamiltonian::build(single_atom(), model36(alpha, 0.0), BasisSpec::full_basis(1));
  PropagatorOptions opts;
  opts.dense_dim_cap = 0;  // force Lanczos
  const std::vector<double> times = make_time_grid(40.0, 25, false);
  const SingleTrajectory traj = propagate(h, ground_state(h.basis_ptr()), times, opts);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expected = std::pow(std::sin(alpha * times[i] / 2.0), 2);
    CHECK(traj.rydberg_fraction[i] == doctest::Approx(expected).epsilon(1e-7));
  }
  CHECK(traj.max_norm_drift <= 1e-8);
}

TEST_CASE("no drive means no excitation") {
  const AtomConfiguration config = sample_uniform(6, 3, 11);
  const SpinHamiltonian h =
      SpinHamiltonian::build(config, model36(0.0, 0.4), BasisSpec::full_basis(6));
  const std::vector<double> times = make_time_grid(50.0, 30);
  const SingleTrajectory traj = propagate(h, ground_state(h.basis_ptr()), times);
  for (double f : traj.rydberg_fraction) CHECK(f == doctest::Approx(0.0).epsilon(1e-14));
}

namespace {

// Independent reduction of the blockaded pair: {|gg>, (|ge>+|eg>)/sqrt(2),
// |ee>} solved by direct 3x3 diagonalization.
double pair_fraction_oracle(double alpha, double interaction, double tau) {
  Eigen::Matrix3d h;
  const double c = alpha / std::sqrt(2.0);
  h << 0.0, c, 0.0, c, 0.0, c, 0.0, c, interaction;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(h);
  Eigen::Vector3cd amp = Eigen::Vector3cd::Zero();
  const Eigen::Matrix3d& u = solver.eigenvectors();
  for (int k = 0; k < 3; ++k) {
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, -solver.eigenvalues()[k] * tau));
    for (int row = 0; row < 3; ++row)
      amp[row] += u(row, k) * phase * u(0, k);
  }
  const double p_w = std::norm(amp[1]);
  const double p_ee = std::norm(amp[2]);
  return 0.5 * p_w + p_ee;
}

}  // namespace

TEST_CASE("blockaded pair follows the collective Rabi oscillation") {
  const double alpha = 1e-3;
  const double r = 0.1;
  const SpinHamiltonian h =
      SpinHamiltonian::build(pair_at(r), model36(alpha, 0.0), BasisSpec::full_basis(2));
  const double omega_collective = std::sqrt(2.0) * alpha;
  const double t_max = 2.5 * std::numbers::pi / omega_collective;
  const std::vector<double> times = make_time_grid(t_max, 120, false);
  const SingleTrajectory traj = propagate(h, ground_state(h.basis_ptr()), times);

  const double interaction = std::pow(r, -6.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double oracle = pair_fraction_oracle(alpha, interaction, times[i]);
    CHECK(traj.rydberg_fraction[i] == doctest::Approx(oracle).epsilon(1e-5));
    const double ideal = 0.5 * std::pow(std::sin(omega_collective * times[i] / 2.0), 2);
    CHECK(std::abs(traj.rydberg_fraction[i] - ideal) < 1e-3);
    peak = std::max(peak, traj.rydberg_fraction[i]);
  }
  CHECK(peak == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("norm and energy stay conserved on a random instance") {
  const AtomConfiguration config = sample_uniform(8, 3, 21);
  const SpinHamiltonian h =
      SpinHamiltonian::build(config, model36(0.08, -0.2), BasisSpec::full_basis(8));
  const std::vector<double> times = make_time_grid(300.0, 80);
  PropagatorOptions opts;
  opts.tol = 1e-8;
  const SingleTrajectory traj = propagate(h, ground_state(h.basis_ptr()), times, opts);
  CHECK(traj.max_norm_drift <= 1e-8);
  CHECK(traj.max_energy_drift <= 10.0 * opts.tol);
  for (double f : traj.rydberg_fraction) {
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("truncated basis at n_max = N reproduces the full basis") {
  const AtomConfiguration config = sample_uniform(8, 3, 77);
  const ModelParams params = model36(0.1, 0.0);
  const std::vector<double> times = make_time_grid(100.0, 40);
  const SpinHamiltonian full =
      SpinHamiltonian::build(config, params, BasisSpec::full_basis(8));
  const SpinHamiltonian trunc =
      SpinHamiltonian::build(config, params, BasisSpec::truncated(8, 8));
  const SingleTrajectory a = propagate(full, ground_state(full.basis_ptr()), times);
  const SingleTrajectory b = propagate(trunc, ground_state(trunc.basis_ptr()), times);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(a.rydberg_fraction[i] == doctest::Approx(b.rydberg_fraction[i]).epsilon(1e-12));
}

TEST_CASE("adaptive truncation converges to the full dynamics in deep blockade") {
  const AtomConfiguration config = sample_uniform(8, 3, 13, 0.3);
  const ModelParams params = model36(0.01, 0.0);
  const std::vector<double> times = make_time_grid(400.0, 50);
  PropagatorOptions opts;
  opts.tol = 1e-8;
  AdaptiveOptions adaptive;
  adaptive.plateau_rel_tol = 0.0;
  adaptive.pointwise_abs_tol = 5e-8;
  const AdaptiveTrajectory result = propagate_adaptive(config, params, times, opts, adaptive);
  CHECK(result.n_max < 8);

  const SpinHamiltonian full = SpinHamiltonian::build(config, params, BasisSpec::full_basis(8));
  const SingleTrajectory reference = propagate(full, ground_state(full.basis_ptr()), times, opts);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(std::abs(result.trajectory.rydberg_fraction[i] - reference.rydberg_fraction[i]) <=
          10.0 * opts.tol);
}

TEST_CASE("relabeling atoms leaves the trajectory invariant") {
  const AtomConfiguration config = sample_uniform(7, 3, 55);
  AtomConfiguration relabeled = config;
  std::swap(relabeled.positions[0], relabeled.positions[4]);
  std::swap(relabeled.positions[2], relabeled.positions[6]);

  const ModelParams params = model36(0.07, -0.1);
  const std::vector<double> times = make_time_grid(120.0, 25);
  const SpinHamiltonian h1 = SpinHamiltonian::build(config, params, BasisSpec::full_basis(7));
  const SpinHamiltonian h2 =
      SpinHamiltonian::build(relabeled, params, BasisSpec::full_basis(7));
  const SingleTrajectory a = propagate(h1, ground_state(h1.basis_ptr()), times);
  const SingleTrajectory b = propagate(h2, ground_state(h2.basis_ptr()), times);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(a.rydberg_fraction[i] == doctest::Approx(b.rydberg_fraction[i]).epsilon(1e-11));
}

TEST_CASE("truncation steps shrink monotonically in the blockaded regime") {
  const AtomConfiguration config = sample_uniform(9, 3, 3, 0.25);
  const ModelParams params = model36(0.01, 0.0);
  const std::vector<double> times = make_time_grid(500.0, 40);

  std::vector<double> plateaus;
  for (int n_max = 1; n_max <= 5; ++n_max) {
    const SpinHamiltonian h =
        SpinHamiltonian::build(config, params, BasisSpec::truncated(9, n_max));
    const SingleTrajectory traj = propagate(h, ground_state(h.basis_ptr()), times);
    plateaus.push_back(saturation_plateau(traj.rydberg_fraction));
  }
  double previous_change = std::abs(plateaus[1] - plateaus[0]);
  CHECK(previous_change > 0.0);
  for (std::size_t k = 2; k < plateaus.size(); ++k) {
    const double change = std::abs(plateaus[k] - plateaus[k - 1]);
    CHECK(change < previous_change);
    previous_change = change;
  }
}

TEST_CASE("Krylov path agrees with the dense path") {
  const AtomConfiguration config = sample_uniform(9, 3, 31, 0.3);
  const ModelParams params = model36(0.05, 0.1);
  const SpinHamiltonian h = SpinHamiltonian::build(config, params, BasisSpec::truncated(9, 4));
  const std::vector<double> times = make_time_grid(150.0, 30);
  PropagatorOptions dense_opts;
  PropagatorOptions krylov_opts;
  krylov_opts.dense_dim_cap = 0;
  const SingleTrajectory a = propagate(h, ground_state(h.basis_ptr()), times, dense_opts);
  const SingleTrajectory b = propagate(h, ground_state(h.basis_ptr()), times, krylov_opts);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(a.rydberg_fraction[i] == doctest::Approx(b.rydberg_fraction[i]).epsilon(5e-7));
  CHECK(b.max_norm_drift <= 1e-8);
}

TEST_CASE("propagate validates its inputs") {
  const SpinHamiltonian h =
      SpinHamiltonian::build(single_atom(), model36(0.1, 0.0), BasisSpec::full_basis(1));
  ManyBodyState state = ground_state(h.basis_ptr());
  const std::vector<double> bad_grid = {1.0, 0.5};
  CHECK_THROWS_AS(propagate(h, state, bad_grid), std::invalid_argument);

  PropagatorOptions bad_tol;
  bad_tol.tol = 1e-2;
  const std::vector<double> grid = {1.0};
  CHECK_THROWS_AS(propagate(h, state, grid, bad_tol), std::invalid_argument);

  state.amplitudes[0] = 0.5;
  CHECK_THROWS_AS(propagate(h, state, grid), std::invalid_argument);
}

TEST_CASE("time grids are strictly increasing and span [0, t_max]") {
  for (bool log_linear : {true, false}) {
    const std::vector<double> grid = make_time_grid(123.0, 37, log_linear);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == doctest::Approx(123.0));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  }
  CHECK_THROWS_AS(make_time_grid(-1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_time_grid(1.0, 1), std::invalid_argument);
}
