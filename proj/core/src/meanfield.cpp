#include "rydscale/meanfield.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rydscale/errors.hpp"
#include "rydscale/params.hpp"

namespace ryd {

namespace {

void check_dp(int d, int p) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (p <= d) throw std::invalid_argument("interaction exponent p must exceed dimension d");
}

double delta_exponent(int d, int p) { return (2.0 * p + d) / (2.0 * d); }
double beta_exponent(int d, int p) { return static_cast<double>(d) / p; }

// On the physical branch the absolute value opens to
//   alpha(f) = f^delta - Delta f^{1/2}
// (delta - p/d = 1/2 identically), monotone increasing for f >= Delta^beta.
double physical_branch(double f, double detuning, double dexp) {
  return std::pow(f, dexp) - detuning * std::sqrt(f);
}

double solve_bracketed(const auto& fn, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(53);
  std::uintmax_t max_iter = 200;
  const auto bracket = boost::math::tools::toms748_solve(fn, lo, hi, tol, max_iter);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace

double eos_rhs(double f, double detuning, int d, int p) {
  check_dp(d, p);
  if (!(f > 0.0)) throw std::invalid_argument("f_R must be > 0");
  const double dexp = delta_exponent(d, p);
  const double inv_beta = 1.0 / beta_exponent(d, p);
  return std::pow(f, dexp) * std::abs(1.0 - detuning / std::pow(f, inv_beta));
}

double classical_fraction(double detuning, int d, int p) {
  check_dp(d, p);
  if (detuning <= 0.0) return 0.0;
  return std::pow(detuning, beta_exponent(d, p));
}

EosSolution eos_solve(double alpha, double detuning, int d, int p) {
  check_dp(d, p);
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("alpha must be finite and >= 0");
  if (!std::isfinite(detuning)) throw std::invalid_argument("detuning must be finite");

  if (alpha == 0.0) {
    EosSolution classical;
    classical.f_R = classical_fraction(detuning, d, p);
    classical.residual = 0.0;
    return classical;
  }

  const double dexp = delta_exponent(d, p);
  const double beta = beta_exponent(d, p);
  const auto fn = [&](double f) { return physical_branch(f, detuning, dexp) - alpha; };

  // Bracket: [max(0,Delta)^beta, max(1, 2(alpha+|Delta|)^{1/delta})], grown
  // geometrically until the sign changes.
  double lo = detuning > 0.0 ? std::pow(detuning, beta) : 0.0;
  double hi = std::max(1.0, 2.0 * std::pow(alpha + std::abs(detuning), 1.0 / dexp));
  int expansions = 0;
  while (fn(hi) < 0.0) {
    hi *= 2.0;
    if (++expansions > 200)
      throw NonconvergenceError("equation-of-state bracket expansion failed at alpha = " +
                                std::to_string(alpha));
  }

  EosSolution out;
  const double root = solve_bracketed(fn, lo, hi);
  out.residual = std::abs(eos_rhs(root, detuning, d, p) - alpha);
  // The rhs is a difference of f^delta and Delta sqrt(f); the achievable
  // residual is floored by their cancellation.
  const double conditioning =
      std::pow(root, dexp) + std::abs(detuning) * std::sqrt(root);
  if (out.residual > std::max(1e-12 * std::max(alpha, 1.0),
                              8.0 * std::numeric_limits<double>::epsilon() * conditioning))
    throw NonconvergenceError("equation-of-state solve did not meet the residual tolerance"
                              " (bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "])");
  if (root > 1.0) {
    out.f_R = 1.0;
    out.saturated = true;
  } else {
    out.f_R = root;
  }
  return out;
}

double chi(double y, int d, int p, double alpha_ref) {
  check_dp(d, p);
  if (!(alpha_ref > 0.0)) throw std::invalid_argument("alpha_ref must be > 0");
  const double dp2 = 2.0 * p + d;
  const double detuning = y * std::pow(alpha_ref, 2.0 * p / dp2);
  const EosSolution sol = eos_solve(alpha_ref, detuning, d, p);
  return sol.f_R / std::pow(alpha_ref, 2.0 * d / dp2);
}

double correlation_length_mf(double f_R, int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(f_R > 0.0)) throw std::invalid_argument("f_R must be > 0");
  return std::pow(f_R, -1.0 / d);
}

std::vector<double> eos_all_roots(double alpha, double detuning, int d, int p) {
  check_dp(d, p);
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");

  std::vector<double> roots;
  if (detuning > 0.0) {
    // Below Delta^beta the absolute value flips:
    //   alpha(f) = Delta f^{1/2} - f^delta,
    // zero at both ends of (0, Delta^beta) with a single interior maximum.
    const double dexp = delta_exponent(d, p);
    const double beta = beta_exponent(d, p);
    const double f_edge = std::pow(detuning, beta);
    const double f_top = std::pow(detuning * d / (2.0 * p + d), beta);
    const auto lower_branch = [&](double f) {
      return detuning * std::sqrt(f) - std::pow(f, dexp) - alpha;
    };
    if (lower_branch(f_top) > 0.0) {
      roots.push_back(solve_bracketed(lower_branch, 0.0, f_top));
      roots.push_back(solve_bracketed(lower_branch, f_top, f_edge));
    } else if (lower_branch(f_top) == 0.0) {
      roots.push_back(f_top);
    }
  }
  const EosSolution physical = eos_solve(alpha, detuning, d, p);
  if (!physical.saturated) roots.push_back(physical.f_R);
  return roots;
}

}  // namespace ryd
