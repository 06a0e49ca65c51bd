#include "rydscale/superatom.hpp"

#include <cmath>
#include <stdexcept>

namespace ryd {

namespace {

void check(double alpha, int d, int p) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (p <= d) throw std::invalid_argument("interaction exponent p must exceed dimension d");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
}

}  // namespace

double blockade_radius(double alpha, int d, int p) {
  check(alpha, d, p);
  return std::pow(alpha, -2.0 / (2.0 * p + d));
}

SuperatomEstimate superatom_estimate(double alpha, int d, int p) {
  check(alpha, d, p);
  SuperatomEstimate est;
  est.xi = blockade_radius(alpha, d, p);
  est.n_blockaded = std::pow(est.xi, d);
  est.collective_rabi = std::sqrt(est.n_blockaded) * alpha;
  est.g_R = alpha / std::sqrt(est.n_blockaded);
  est.f_sat = 1.0 / est.n_blockaded;
  return est;
}

}  // namespace ryd
