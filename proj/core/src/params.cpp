#include "rydscale/params.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rydscale/constants.hpp"

namespace ryd {

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

void PhysicalParams::validate() const {
  if (!(rabi_frequency >= 0.0)) throw std::invalid_argument("rabi_frequency must be >= 0");
  if (!(density > 0.0)) throw std::invalid_argument("density must be > 0");
  if (!(interaction_coefficient > 0.0))
    throw std::invalid_argument("interaction_coefficient must be > 0 (repulsive magnitude)");
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (interaction_exponent <= dimension)
    throw std::invalid_argument("interaction exponent p must exceed dimension d");
  if (atom_number < 1) throw std::invalid_argument("atom_number must be >= 1");
}

void ModelParams::validate() const {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (interaction_exponent <= dimension)
    throw std::invalid_argument("interaction exponent p must exceed dimension d");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!std::isfinite(alpha) || !std::isfinite(delta))
    throw std::invalid_argument("alpha and delta must be finite");
}

double characteristic_energy(const PhysicalParams& phys) {
  phys.validate();
  const double pd = static_cast<double>(phys.interaction_exponent) / phys.dimension;
  return phys.interaction_coefficient * std::pow(phys.density, pd);
}

ModelParams nondimensionalize(const PhysicalParams& phys) {
  const double ec = characteristic_energy(phys);
  ModelParams model;
  model.dimension = phys.dimension;
  model.interaction_exponent = phys.interaction_exponent;
  model.alpha = constants::hbar_Js * phys.rabi_frequency / ec;
  model.delta = constants::hbar_Js * phys.laser_detuning / ec;
  return model;
}

CriticalExponents critical_exponents(int d, int p) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (p <= d) throw std::invalid_argument("interaction exponent p must exceed dimension d");
  CriticalExponents e;
  e.beta = Rational(d, p);
  e.one_over_delta = Rational(2LL * d, 2LL * p + d);
  e.gamma = Rational(2LL * (p + d), 2LL * p + d);
  e.z = Rational(p, 1);
  e.nu = Rational(1, p);
  return e;
}

double c6_atomic_to_si(double c6_au, bool* negative_input) {
  if (!std::isfinite(c6_au)) throw std::invalid_argument("c6_au must be finite");
  if (negative_input) *negative_input = c6_au < 0.0;
  const double a0 = constants::bohr_radius_m;
  const double a0_6 = a0 * a0 * a0 * a0 * a0 * a0;
  return std::abs(c6_au) * constants::hartree_J * a0_6;
}

double c6_si_to_hz_um6(double c6_si) {
  // 1 m^6 = 1e36 um^6
  return c6_si / constants::planck_Js * 1e36;
}

}  // namespace ryd
