#pragma once

#include <array>
#include <functional>

namespace ryd {

// Trapped-cloud Gaussian density profile
//   n(r) = N / ((2 pi)^{d/2} prod sigma_i) exp(-sum x_i^2 / 2 sigma_i^2)
// using the first d components of `sigmas`.
struct CloudSpec {
  std::array<double, 3> sigmas{0.0, 0.0, 0.0};  // [m]
  double atom_number = 0.0;

  double peak_density(int d = 3) const;  // n(0) [m^-d]
  void validate(int d = 3) const;
};

struct LdaResult {
  double f_R = 0.0;
  double prefactor = 0.0;        // f_R / alpha_peak^{1/delta}
  bool validity_warning = false; // blockade radius reaches the smallest cloud radius
};

// Cloud-averaged fraction under the local-density approximation with the
// local power law f_R(r) = alpha(r)^{1/delta}, alpha(r) = alpha_peak
// (n(0)/n(r))^{p/d}. The trap rescales the prefactor, not the exponent:
// f_R(cloud) = prefactor * alpha_peak^{1/delta} with the sigma-independent
// prefactor below.
LdaResult lda_average(const CloudSpec& cloud, double alpha_peak, int d, int p);

// (1 - (p/d)(1/delta))^{-d/2} = ((2p+d)/d)^{d/2}
double lda_prefactor_closed_form(int d, int p);

// Cloud average (1/N) Integral d^d r n(r) local(u) of a local law given as a
// function of the sigma-rescaled radius u (adaptive quadrature). A constant
// law averages to itself.
double cloud_average(int d, const std::function<double(double)>& local);

// Extended mode: local law from the full equation of state at fixed
// dimensionless detuning.
LdaResult lda_average_eos(const CloudSpec& cloud, double alpha_peak, double detuning, int d,
                          int p);

// Transverse-integrated line density of a cigar cloud (sigma_z largest):
// n1(z) = N / (sqrt(2 pi) sigma_z) exp(-z^2 / 2 sigma_z^2)
double line_density(const CloudSpec& cloud, double z);
double peak_line_density(const CloudSpec& cloud);

}  // namespace ryd
