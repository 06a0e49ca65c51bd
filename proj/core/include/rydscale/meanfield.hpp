#pragma once

#include <vector>

namespace ryd {

enum class EosBranch { physical };

// Root of the mean-field equation of state
//
//   alpha = f_R^delta |1 - Delta / f_R^{1/beta}|,   delta = (2p+d)/2d, beta = d/p
//
// on the physical branch f_R >= max(0, Delta)^beta, which connects to the
// classical crystal at alpha = 0 and increases monotonically with alpha.
struct EosSolution {
  double f_R = 0.0;
  EosBranch branch = EosBranch::physical;
  double residual = 0.0;   // |alpha - rhs(root)| at the uncapped root
  bool saturated = false;  // root exceeded 1; f_R reported capped at 1
};

// Right-hand side alpha(f) of the equation of state.
double eos_rhs(double f, double detuning, int d, int p);

// alpha = 0 falls through to classical_fraction.
EosSolution eos_solve(double alpha, double detuning, int d, int p);

// alpha = 0 limit: f_R = Delta^{d/p} for Delta > 0, else 0.
double classical_fraction(double detuning, int d, int p);

// Universal scaling function of f_R = alpha^{2d/(2p+d)} chi(Delta/alpha^{2p/(2p+d)}),
// evaluated through the equation of state at a reference alpha. The result
// is alpha_ref-independent (that is the collapse property).
double chi(double y, int d, int p, double alpha_ref = 1e-6);

// xi/a = f_R^{-1/d}, the mean spacing between excited atoms.
double correlation_length_mf(double f_R, int d);

// Diagnostic: every root of the equation of state in (0, 1], including the
// non-physical branches below Delta^beta. The physical root is last.
std::vector<double> eos_all_roots(double alpha, double detuning, int d, int p);

}  // namespace ryd
