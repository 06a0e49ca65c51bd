#include "rydscale/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rydscale/rng.hpp"

namespace ryd {

namespace {

// Model and Jacobian in theta = (ln R, ln N_sat); positivity comes free and
// the iteration is exactly equivariant under count rescaling.
struct SaturationModel {
  std::span<const double> t;
  std::span<const double> y;

  double model(double log_r, double log_s, double time) const {
    const double s = std::exp(log_s);
    const double x = std::exp(log_r) * time / s;
    return s * (-std::expm1(-x));
  }

  // residuals r_i = y_i - m(t_i), J_ij = d m(t_i) / d theta_j
  void eval(const Eigen::Vector2d& theta, Eigen::VectorXd& resid, Eigen::MatrixXd& jac) const {
    const double r = std::exp(theta[0]);
    const double s = std::exp(theta[1]);
    const auto n = static_cast<Eigen::Index>(t.size());
    resid.resize(n);
    jac.resize(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double x = r * t[i] / s;
      const double e = std::exp(-x);
      const double m = s * (-std::expm1(-x));
      resid[i] = y[i] - m;
      jac(i, 0) = r * t[i] * e;           // dm/d(ln R) = R t e^{-x}
      jac(i, 1) = m - r * t[i] * e;       // dm/d(ln S) = m - R t e^{-x}
    }
  }
};

}  // namespace

SaturationFit fit_saturation(std::span<const double> times, std::span<const double> counts,
                             std::optional<std::pair<double, double>> initial_guess) {
  if (times.size() != counts.size()) throw std::invalid_argument("times/counts size mismatch");
  if (times.size() < 4) throw std::invalid_argument("need at least 4 points");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("times must be increasing");
  double count_max = 0.0;
  for (double c : counts) {
    if (c < 0.0) throw std::invalid_argument("counts must be >= 0");
    count_max = std::max(count_max, c);
  }
  if (count_max == 0.0) throw std::invalid_argument("all counts are zero");

  // Default guess: N_sat from the largest count, R from the first nonzero rise.
  double r0, s0;
  if (initial_guess) {
    r0 = initial_guess->first;
    s0 = initial_guess->second;
    if (!(r0 > 0.0) || !(s0 > 0.0)) throw std::invalid_argument("initial guess must be positive");
  } else {
    s0 = count_max;
    r0 = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double slope = (counts[i] - counts[0]) / (times[i] - times[0]);
      if (slope > 0.0) {
        r0 = slope;
        break;
      }
    }
    if (r0 <= 0.0) r0 = count_max / times.back();
  }

  const SaturationModel problem{times, counts};
  Eigen::Vector2d theta(std::log(r0), std::log(s0));
  Eigen::VectorXd resid;
  Eigen::MatrixXd jac;
  problem.eval(theta, resid, jac);
  double ssr = resid.squaredNorm();

  SaturationFit fit;
  double lambda = 1e-3;
  const int max_iterations = 200;
  const double grad_tol = 1e-10;  // relative to the count scale
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d grad = jac.transpose() * resid;
    if (grad.lpNorm<Eigen::Infinity>() <= grad_tol * count_max * count_max) {
      fit.converged = true;
      break;
    }
    Eigen::Matrix2d damped = jtj;
    damped(0, 0) += lambda * jtj(0, 0);
    damped(1, 1) += lambda * jtj(1, 1);
    const Eigen::Vector2d step = damped.ldlt().solve(grad);
    if (!step.allFinite()) {
      lambda *= 10.0;
      continue;
    }
    const Eigen::Vector2d trial = theta + step;
    Eigen::VectorXd trial_resid;
    Eigen::MatrixXd trial_jac;
    problem.eval(trial, trial_resid, trial_jac);
    const double trial_ssr = trial_resid.squaredNorm();
    if (trial_ssr < ssr) {
      theta = trial;
      resid = std::move(trial_resid);
      jac = std::move(trial_jac);
      ssr = trial_ssr;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (step.lpNorm<Eigen::Infinity>() < 1e-14) {
        fit.converged = true;
        ++iter;
        break;
      }
    } else {
      // a vanishing step that cannot improve the objective any further means
      // the fit sits at the floating-point floor of the minimum
      if (step.lpNorm<Eigen::Infinity>() < 1e-10 && trial_ssr <= ssr * (1.0 + 1e-10)) {
        fit.converged = true;
        ++iter;
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e12) break;  // stuck; report best-so-far
    }
  }

  fit.iterations = iter;
  fit.rate = std::exp(theta[0]);
  fit.saturation = std::exp(theta[1]);
  fit.residual_norm = std::sqrt(ssr);

  // Standard errors from the linearized covariance sigma^2 (J^T J)^{-1},
  // propagated out of log space.
  const auto n = static_cast<double>(times.size());
  const Eigen::Matrix2d jtj = jac.transpose() * jac;
  const double sigma2 = n > 2 ? ssr / (n - 2.0) : 0.0;
  const double det = jtj.determinant();
  if (det > 1e-30 * std::max(1.0, jtj(0, 0) * jtj(1, 1))) {
    Eigen::Matrix2d cov;
    cov << jtj(1, 1), -jtj(0, 1), -jtj(1, 0), jtj(0, 0);
    cov *= sigma2 / det;
    fit.rate_stderr = fit.rate * std::sqrt(std::max(0.0, cov(0, 0)));
    fit.saturation_stderr = fit.saturation * std::sqrt(std::max(0.0, cov(1, 1)));
  } else {
    fit.rate_stderr = std::numeric_limits<double>::infinity();
    fit.saturation_stderr = std::numeric_limits<double>::infinity();
  }
  fit.saturation_unconstrained = !(fit.saturation_stderr < fit.saturation);
  return fit;
}

namespace {

PowerLawFit weighted_log_ols(std::span<const double> x, std::span<const double> y,
                             const std::vector<double>& w) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("x/y size mismatch");
  if (n < 3) throw std::invalid_argument("need at least 3 points");

  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("power-law fit requires positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }

  double wsum = 0.0, mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    wsum += w[i];
    mx += w[i] * lx[i];
    my += w[i] * ly[i];
  }
  mx /= wsum;
  my /= wsum;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mx;
    const double dy = ly[i] - my;
    sxx += w[i] * dx * dx;
    sxy += w[i] * dx * dy;
    syy += w[i] * dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("all x values coincide");

  PowerLawFit fit;
  fit.point_count = static_cast<int>(n);
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;

  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
    ssr += w[i] * r * r;
  }
  const double dof = static_cast<double>(n) - 2.0;
  const double sigma2 = ssr / dof;
  fit.exponent_stderr = std::sqrt(sigma2 / sxx);
  fit.intercept_stderr = std::sqrt(sigma2 * (1.0 / wsum + mx * mx / sxx));
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return fit;
}

}  // namespace

PowerLawFit fit_powerlaw(std::span<const double> x, std::span<const double> y) {
  return weighted_log_ols(x, y, std::vector<double>(x.size(), 1.0));
}

PowerLawFit fit_powerlaw_weighted(std::span<const double> x, std::span<const double> y,
                                  std::span<const double> weights) {
  if (weights.size() != x.size()) throw std::invalid_argument("weights size mismatch");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("weights must be > 0");
  return weighted_log_ols(x, y, std::vector<double>(weights.begin(), weights.end()));
}

double bootstrap_exponent_stderr(std::span<const double> x, std::span<const double> y,
                                 int resamples, std::uint64_t seed) {
  if (resamples < 2) throw std::invalid_argument("need at least 2 resamples");
  const std::size_t n = x.size();
  fit_powerlaw(x, y);  // validate the inputs once

  Rng rng(seed);
  std::vector<double> bx(n), by(n), exponents;
  exponents.reserve(resamples);
  for (int b = 0; b < resamples; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      bx[i] = x[std::min(j, n - 1)];
      by[i] = y[std::min(j, n - 1)];
    }
    try {
      exponents.push_back(fit_powerlaw(bx, by).exponent);
    } catch (const std::invalid_argument&) {
      // degenerate resample (all x equal); skip it
    }
  }
  if (exponents.size() < 2) throw std::invalid_argument("too many degenerate resamples");

  double mean = 0.0;
  for (double e : exponents) mean += e;
  mean /= static_cast<double>(exponents.size());
  double ss = 0.0;
  for (double e : exponents) ss += (e - mean) * (e - mean);
  return std::sqrt(ss / (static_cast<double>(exponents.size()) - 1.0));
}

}  // namespace ryd
