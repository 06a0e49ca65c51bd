#pragma once

namespace ryd {

// Closed-form superatom model: within the blockade radius xi one excitation
// is shared by N_b = xi^d atoms and driven at the collective Rabi frequency
// sqrt(N_b) alpha. All prefactors are set to 1; the content is the scaling.
struct SuperatomEstimate {
  double xi = 0.0;              // blockade radius, units of a
  double n_blockaded = 0.0;     // N_b = xi^d
  double collective_rabi = 0.0; // sqrt(N_b) alpha
  double g_R = 0.0;             // per-atom rate alpha/sqrt(N_b) = alpha^gamma
  double f_sat = 0.0;           // 1/N_b = alpha^{1/delta}
};

// xi = alpha^{-2/(2p+d)}, the solution of xi^{-p} = sqrt(xi^d) alpha.
double blockade_radius(double alpha, int d, int p);

SuperatomEstimate superatom_estimate(double alpha, int d, int p);

}  // namespace ryd
