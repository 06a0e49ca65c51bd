#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "rydscale/constants.hpp"
#include "rydscale/params.hpp"

using namespace ryd;

namespace {

// Reference conditions: Omega = 2 pi x 154 kHz, n = 3.2e19 m^-3,
// C6 = 1.7e19 a.u., d = 3, p = 6.
PhysicalParams reference_params() {
  PhysicalParams phys;
  phys.rabi_frequency = 2.0 * std::numbers::pi * 154e3;
  phys.laser_detuning = 0.0;
  phys.density = 3.2e19;
  phys.interaction_coefficient = c6_atomic_to_si(1.7e19);
  phys.dimension = 3;
  phys.interaction_exponent = 6;
  phys.atom_number = 100;
  return phys;
}

}  // namespace

TEST_CASE("c6 conversion against direct constant arithmetic") {
  // frozen: 1.7e19 * E_h * a0^6 evaluated independently
  CHECK(c6_atomic_to_si(1.7e19) == doctest::Approx(1.62748419518639e-60).epsilon(1e-12));
  CHECK(c6_si_to_hz_um6(c6_atomic_to_si(1.7e19)) ==
        doctest::Approx(2456183164.898111).epsilon(1e-12));
  CHECK(c6_atomic_to_si(0.0) == 0.0);
  CHECK(c6_si_to_hz_um6(c6_atomic_to_si(1.0)) ==
        doctest::Approx(1.4448136264106536e-10).epsilon(1e-12));

  bool negative = false;
  const double from_negative = c6_atomic_to_si(-1.7e19, &negative);
  CHECK(negative);
  CHECK(from_negative == c6_atomic_to_si(1.7e19));
  c6_atomic_to_si(1.7e19, &negative);
  CHECK_FALSE(negative);
}

TEST_CASE("nondimensionalization of the reference conditions") {
  const ModelParams model = nondimensionalize(reference_params());
  CHECK(model.alpha == doctest::Approx(6.122940139689923e-08).epsilon(1e-10));
  CHECK(model.delta == 0.0);
  CHECK(model.dimension == 3);
  CHECK(model.interaction_exponent == 6);
}

TEST_CASE("nondimensionalize zero drive") {
  PhysicalParams phys = reference_params();
  phys.rabi_frequency = 0.0;
  const ModelParams model = nondimensionalize(phys);
  CHECK(model.alpha == 0.0);
  CHECK(model.delta == 0.0);
}

TEST_CASE("alpha scales as n^{-p/d}") {
  PhysicalParams phys = reference_params();
  const double alpha1 = nondimensionalize(phys).alpha;
  phys.density *= 2.0;
  const double alpha2 = nondimensionalize(phys).alpha;
  // d = 3, p = 6: doubling n divides alpha by 2^{p/d} = 4
  CHECK(alpha2 / alpha1 == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("nondimensionalize homogeneity in Omega and n") {
  PhysicalParams phys = reference_params();
  phys.laser_detuning = 2.0 * std::numbers::pi * 10e3;
  const ModelParams base = nondimensionalize(phys);

  PhysicalParams scaled = phys;
  scaled.rabi_frequency *= 7.0;
  CHECK(nondimensionalize(scaled).alpha ==
        doctest::Approx(7.0 * base.alpha).epsilon(1e-15));

  scaled = phys;
  scaled.density *= 3.0;
  const double factor = std::pow(3.0, -2.0);  // n^{-p/d}
  const ModelParams denser = nondimensionalize(scaled);
  CHECK(denser.alpha == doctest::Approx(base.alpha * factor).epsilon(1e-14));
  CHECK(denser.delta == doctest::Approx(base.delta * factor).epsilon(1e-14));
}

TEST_CASE("round trip through the characteristic energy") {
  const PhysicalParams phys = reference_params();
  const ModelParams model = nondimensionalize(phys);
  const double ec = characteristic_energy(phys);
  const double omega_back = model.alpha * ec / constants::hbar_Js;
  CHECK(omega_back == doctest::Approx(phys.rabi_frequency).epsilon(1e-12));
}

TEST_CASE("nondimensionalize rejects bad inputs") {
  PhysicalParams phys = reference_params();
  phys.interaction_exponent = 3;  // p = d: no critical point
  CHECK_THROWS_AS(nondimensionalize(phys), std::invalid_argument);
  phys = reference_params();
  phys.density = 0.0;
  CHECK_THROWS_AS(nondimensionalize(phys), std::invalid_argument);
  phys = reference_params();
  phys.density = -1.0;
  CHECK_THROWS_AS(nondimensionalize(phys), std::invalid_argument);
}

TEST_CASE("critical exponents as exact rationals") {
  const CriticalExponents e36 = critical_exponents(3, 6);
  CHECK(e36.beta == Rational(1, 2));
  CHECK(e36.one_over_delta == Rational(2, 5));
  CHECK(e36.one_over_delta.value() == 0.4);
  CHECK(e36.gamma == Rational(6, 5));
  CHECK(e36.gamma.value() == 1.2);
  CHECK(e36.z == Rational(6, 1));
  CHECK(e36.nu == Rational(1, 6));

  const CriticalExponents e16 = critical_exponents(1, 6);
  CHECK(e16.one_over_delta == Rational(2, 13));
  CHECK(e16.gamma == Rational(14, 13));
  CHECK(e16.gamma.value() == doctest::Approx(1.0769230769230769).epsilon(1e-15));

  const CriticalExponents e26 = critical_exponents(2, 6);
  CHECK(e26.one_over_delta == Rational(2, 7));  // 4/14 reduced

  CHECK_THROWS_AS(critical_exponents(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(critical_exponents(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(critical_exponents(0, 6), std::invalid_argument);
}

TEST_CASE("exponent identities hold for all valid (d, p)") {
  for (int d = 1; d <= 3; ++d) {
    for (int p = d + 1; p <= 12; ++p) {
      const CriticalExponents e = critical_exponents(d, p);
      CHECK(e.beta == Rational(d, p));
      CHECK(e.one_over_delta == Rational(2 * d, 2 * p + d));
      CHECK(e.gamma == Rational(2 * (p + d), 2 * p + d));
      // gamma - 1 = d/(2p+d), i.e. gamma = 1 + (1/delta)/2, exactly
      CHECK(Rational(e.gamma.num - e.gamma.den, e.gamma.den) == Rational(d, 2 * p + d));
      CHECK(e.z == Rational(p, 1));
      CHECK(e.beta.value() > 0.0);
      CHECK(e.nu.value() > 0.0);
    }
  }
}

TEST_CASE("rational arithmetic reduces") {
  CHECK(Rational(4, 14) == Rational(2, 7));
  CHECK(Rational(2, 5).str() == "2/5");
  CHECK(Rational(6, 1).str() == "6");
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}
