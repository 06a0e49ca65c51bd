#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "rydscale/meanfield.hpp"
#include "rydscale/superatom.hpp"

using namespace ryd;

TEST_CASE("blockade radius closed form") {
  CHECK(blockade_radius(1.0, 3, 6) == 1.0);
  // cross-check the exponent by solving xi^{-p} = xi^{d/2} alpha numerically
  const double alpha = 1e-5;
  double lo = 1.0, hi = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::pow(mid, -6.0) > std::pow(mid, 1.5) * alpha ? lo : hi) = mid;
  }
  CHECK(blockade_radius(alpha, 3, 6) == doctest::Approx(lo).epsilon(1e-10));
  CHECK(blockade_radius(alpha, 3, 6) == doctest::Approx(std::pow(10.0, 2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("superatom estimate at alpha = 1e-5 (3d)") {
  const SuperatomEstimate est = superatom_estimate(1e-5, 3, 6);
  CHECK(est.n_blockaded == doctest::Approx(100.0).epsilon(1e-10));
  CHECK(est.f_sat == doctest::Approx(1e-2).epsilon(1e-10));
  CHECK(est.g_R == doctest::Approx(1e-6).epsilon(1e-10));
  CHECK(est.collective_rabi == doctest::Approx(std::sqrt(est.n_blockaded) * 1e-5).epsilon(1e-12));
}

TEST_CASE("superatom estimate in one dimension") {
  const SuperatomEstimate est = superatom_estimate(1e-13, 1, 6);
  CHECK(est.n_blockaded == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(est.f_sat == doctest::Approx(1e-2).epsilon(1e-9));
}

TEST_CASE("rate exponent is gamma by construction") {
  for (int d = 1; d <= 3; ++d) {
    const int p = 6;
    const double gamma = 2.0 * (p + d) / (2.0 * p + d);
    for (double alpha = 1e-8; alpha < 1e-2; alpha *= 10.0) {
      const double ratio =
          std::log(superatom_estimate(10.0 * alpha, d, p).g_R / superatom_estimate(alpha, d, p).g_R) /
          std::log(10.0);
      CHECK(ratio == doctest::Approx(gamma).epsilon(1e-12));
    }
  }
}

TEST_CASE("superatom and mean field share the saturation exponent") {
  double first_ratio = 0.0;
  for (int k = 0; k <= 4; ++k) {
    const double alpha = std::pow(10.0, -8.0 + k);  // 4 decades
    const double ratio = superatom_estimate(alpha, 3, 6).f_sat / eos_solve(alpha, 0.0, 3, 6).f_R;
    if (k == 0)
      first_ratio = ratio;
    else
      CHECK(ratio == doctest::Approx(first_ratio).epsilon(1e-9));
  }
}

TEST_CASE("xi diverges with the exact step ratio") {
  for (int d = 1; d <= 3; ++d) {
    const int p = 6;
    const double step = std::pow(10.0, 2.0 / (2.0 * p + d));
    for (double alpha : {1e-7, 1e-4, 1e-2}) {
      CHECK(blockade_radius(alpha / 10.0, d, p) / blockade_radius(alpha, d, p) ==
            doctest::Approx(step).epsilon(1e-12));
    }
  }
}

TEST_CASE("characteristic time scales as xi^z with z = p") {
  for (double alpha : {1e-6, 1e-4, 1e-2}) {
    const SuperatomEstimate est = superatom_estimate(alpha, 3, 6);
    const double tau = 1.0 / est.collective_rabi;
    CHECK(tau == doctest::Approx(std::pow(est.xi, 6.0)).epsilon(1e-12));
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(blockade_radius(0.0, 3, 6), std::invalid_argument);
  CHECK_THROWS_AS(blockade_radius(-1.0, 3, 6), std::invalid_argument);
  CHECK_THROWS_AS(superatom_estimate(1e-3, 6, 6), std::invalid_argument);
}
