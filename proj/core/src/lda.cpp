#include "rydscale/lda.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rydscale/meanfield.hpp"
#include "rydscale/superatom.hpp"

namespace ryd {

namespace {

using std::numbers::pi;

void check_dp(int d, int p) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (p <= d) throw std::invalid_argument("interaction exponent p must exceed dimension d");
}

// Unit-sphere surface measure in d dimensions.
double surface_coefficient(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * pi;
    default: return 4.0 * pi;
  }
}

// S_d (2 pi)^{-d/2} Integral_0^inf integrand(u) du
double radial_integral(int d, const auto& integrand) {
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 12, 1e-12);
  return surface_coefficient(d) * std::pow(2.0 * pi, -0.5 * d) * integral;
}

// Gaussian weight with a hard zero once it underflows the normal range, so
// weight * local never turns into 0 * inf for growing local laws.
double radial_weight(int d, double u) {
  const double w = std::pow(u, d - 1) * std::exp(-0.5 * u * u);
  return w < 2.3e-308 ? 0.0 : w;
}

bool blockade_reaches_cloud(const CloudSpec& cloud, double alpha_peak, int d, int p) {
  // a = n(0)^{-1/d} at the trap center
  const double spacing = std::pow(cloud.peak_density(d), -1.0 / d);
  const double xi = blockade_radius(alpha_peak, d, p) * spacing;
  double sigma_min = cloud.sigmas[0];
  for (int c = 1; c < d; ++c) sigma_min = std::min(sigma_min, cloud.sigmas[c]);
  return xi > sigma_min;
}

}  // namespace

double CloudSpec::peak_density(int d) const {
  validate(d);
  double denom = std::pow(2.0 * pi, 0.5 * d);
  for (int c = 0; c < d; ++c) denom *= sigmas[c];
  return atom_number / denom;
}

void CloudSpec::validate(int d) const {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  for (int c = 0; c < d; ++c)
    if (!(sigmas[c] > 0.0)) throw std::invalid_argument("cloud sigmas must be > 0");
  if (!(atom_number > 0.0)) throw std::invalid_argument("atom_number must be > 0");
}

double lda_prefactor_closed_form(int d, int p) {
  check_dp(d, p);
  // s = 1 - (p/d)(2d/(2p+d)) = d/(2p+d); the Gaussian integral gives s^{-d/2}.
  const double s = static_cast<double>(d) / (2.0 * p + d);
  return std::pow(s, -0.5 * d);
}

double cloud_average(int d, const std::function<double(double)>& local) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  return radial_integral(d, [&](double u) {
    const double w = radial_weight(d, u);
    return w == 0.0 ? 0.0 : w * local(u);
  });
}

LdaResult lda_average(const CloudSpec& cloud, double alpha_peak, int d, int p) {
  check_dp(d, p);
  cloud.validate(d);
  if (!(alpha_peak > 0.0)) throw std::invalid_argument("alpha_peak must be > 0");

  const double inv_delta = 2.0 * d / (2.0 * p + d);
  const double s = 1.0 - (static_cast<double>(p) / d) * inv_delta;
  if (!(s > 0.0)) throw std::invalid_argument("divergent cloud wings: 1 - (p/d)/delta <= 0");

  // alpha(u) = alpha_peak e^{(p/d) u^2/2}, so the local law contributes
  // e^{(1-s) u^2/2} against the e^{-u^2/2} density weight.
  const double ratio = cloud_average(d, [&](double u) {
    return std::exp(0.5 * (1.0 - s) * u * u);
  });

  LdaResult out;
  out.prefactor = ratio;
  out.f_R = std::pow(alpha_peak, inv_delta) * ratio;
  out.validity_warning = blockade_reaches_cloud(cloud, alpha_peak, d, p);
  return out;
}

LdaResult lda_average_eos(const CloudSpec& cloud, double alpha_peak, double detuning, int d,
                          int p) {
  check_dp(d, p);
  cloud.validate(d);
  if (!(alpha_peak > 0.0)) throw std::invalid_argument("alpha_peak must be > 0");

  const double pd = static_cast<double>(p) / d;
  const double log_alpha_peak = std::log(alpha_peak);
  const double f_cloud = cloud_average(d, [&](double u) {
    // alpha grows without bound in the dilute wings; past ~e^30 the equation
    // of state is pinned at the saturated f_R = 1 anyway.
    const double log_alpha_local = log_alpha_peak + 0.5 * pd * u * u;
    return log_alpha_local > 30.0 ? 1.0
                                  : eos_solve(std::exp(log_alpha_local), detuning, d, p).f_R;
  });

  LdaResult out;
  out.f_R = f_cloud;
  out.prefactor = f_cloud / std::pow(alpha_peak, 2.0 * d / (2.0 * p + d));
  out.validity_warning = blockade_reaches_cloud(cloud, alpha_peak, d, p);
  return out;
}

double line_density(const CloudSpec& cloud, double z) {
  cloud.validate(3);
  if (!(cloud.sigmas[2] > cloud.sigmas[0]) || !(cloud.sigmas[2] > cloud.sigmas[1]))
    throw std::invalid_argument("line density requires a cigar cloud (sigma_z largest)");
  const double sz = cloud.sigmas[2];
  return cloud.atom_number / (std::sqrt(2.0 * pi) * sz) * std::exp(-0.5 * z * z / (sz * sz));
}

double peak_line_density(const CloudSpec& cloud) {
  return line_density(cloud, 0.0);
}

}  // namespace ryd
