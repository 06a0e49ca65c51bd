#pragma once

#include <span>
#include <vector>

#include "rydscale/hamiltonian.hpp"
#include "rydscale/state.hpp"

namespace ryd {

struct PropagatorOptions {
  double tol = 1e-8;                 // local relative accuracy, in (0, 1e-3]
  std::size_t dense_dim_cap = 4096;  // eigendecomposition up to here, Lanczos above
  int krylov_dim = 30;
  std::size_t max_steps = 20'000'000;

  void validate() const;
};

// f_R(tau) along one propagation, plus the contract diagnostics.
struct SingleTrajectory {
  std::vector<double> times;
  std::vector<double> rydberg_fraction;
  double max_norm_drift = 0.0;    // max |1 - <psi|psi>| over the grid
  double max_energy_drift = 0.0;  // max |<H>(tau) - <H>(0)|
  ManyBodyState final_state;
};

// Solves i d|psi>/dtau = H |psi| for the time-independent H, sampling the
// Rydberg fraction at the grid times (strictly increasing, all >= the
// initial state's time).
SingleTrajectory propagate(const SpinHamiltonian& h, const ManyBodyState& initial,
                           std::span<const double> times, const PropagatorOptions& opts = {});

ManyBodyState evolve(const SpinHamiltonian& h, const ManyBodyState& initial, double t,
                     const PropagatorOptions& opts = {});

// Default sampling grid on [0, t_max]: logarithmic through the initial rise,
// then linear across the plateau.
std::vector<double> make_time_grid(double t_max, int points, bool log_linear = true);

}  // namespace ryd
