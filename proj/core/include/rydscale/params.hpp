#pragma once

#include <string>

namespace ryd {

// Reduced fraction, exact integer arithmetic.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
};

// Laboratory-frame problem definition. Angular frequencies throughout; the
// interaction coefficient C_p is stored as a repulsive magnitude in J m^p.
struct PhysicalParams {
  double rabi_frequency = 0.0;           // Omega [rad/s]
  double laser_detuning = 0.0;           // delta_L [rad/s]
  double density = 0.0;                  // n [m^-d]
  double interaction_coefficient = 0.0;  // C_p [J m^p]
  int dimension = 3;                     // d
  int interaction_exponent = 6;          // p
  long atom_number = 1;                  // N

  void validate() const;
};

// Dimensionless problem after rescaling by the characteristic interaction
// energy E_c = C_p n^{p/d}:  alpha = hbar*Omega/E_c, Delta = hbar*delta_L/E_c.
// Natural units downstream: hbar = 1, length a = n^{-1/d}, time hbar/E_c.
struct ModelParams {
  int dimension = 3;
  int interaction_exponent = 6;
  double alpha = 0.0;
  double delta = 0.0;

  void validate() const;
};

// Closed-form critical exponents of the C_p/r^p pseudospin model in d
// dimensions. nu = 1/p is derived (from xi ~ a/f_R^{1/d} with beta = d/p)
// rather than tabulated directly.
struct CriticalExponents {
  Rational beta;            // d/p
  Rational one_over_delta;  // 2d/(2p+d)
  Rational gamma;           // 2(p+d)/(2p+d)
  Rational z;               // p
  Rational nu;              // 1/p
};

double characteristic_energy(const PhysicalParams& phys);  // E_c [J]
ModelParams nondimensionalize(const PhysicalParams& phys);
CriticalExponents critical_exponents(int d, int p);

// |c6_au| * E_h * a_0^6  ->  [J m^6]. A negative input is the attractive sign
// convention for the same coefficient; the magnitude is used and, if
// `negative_input` is given, the flag is set instead of raising an error.
double c6_atomic_to_si(double c6_au, bool* negative_input = nullptr);
double c6_si_to_hz_um6(double c6_si);

}  // namespace ryd
