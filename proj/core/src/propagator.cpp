#include "rydscale/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "rydscale/errors.hpp"
#include "rydscale/observables.hpp"

namespace ryd {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

constexpr complex<double> kImag{0.0, 1.0};

// Real orthogonal transform applied to a complex vector, two dgemv's.
VectorXcd mul_real_complex(const MatrixXd& m, const VectorXcd& v, bool transpose) {
  VectorXd re = transpose ? VectorXd(m.transpose() * v.real()) : VectorXd(m * v.real());
  VectorXd im = transpose ? VectorXd(m.transpose() * v.imag()) : VectorXd(m * v.imag());
  VectorXcd out(re.size());
  for (Index i = 0; i < re.size(); ++i) out[i] = complex<double>(re[i], im[i]);
  return out;
}

void check_grid(const ManyBodyState& initial, std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("empty time grid");
  double prev = initial.time;
  bool first = true;
  for (double t : times) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite grid time");
    if (first ? t < prev : t <= prev)
      throw std::invalid_argument("grid times must be strictly increasing and >= start time");
    prev = t;
    first = false;
  }
}

struct DriftTracker {
  double e0 = 0.0;
  double max_norm = 0.0;
  double max_energy = 0.0;

  void init(const SpinHamiltonian& h, const VectorXcd& psi) { e0 = h.expectation(psi); }
  void update(const SpinHamiltonian& h, const VectorXcd& psi) {
    max_norm = std::max(max_norm, std::abs(1.0 - psi.squaredNorm()));
    max_energy = std::max(max_energy, std::abs(h.expectation(psi) - e0));
  }
};

SingleTrajectory propagate_dense(const SpinHamiltonian& h, const ManyBodyState& initial,
                                 std::span<const double> times) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(h.dense());
  if (solver.info() != Eigen::Success)
    throw NonconvergenceError("dense eigendecomposition failed");
  const VectorXd& evals = solver.eigenvalues();
  const MatrixXd& evecs = solver.eigenvectors();

  const VectorXcd c0 = mul_real_complex(evecs, initial.amplitudes, true);

  SingleTrajectory result;
  result.times.assign(times.begin(), times.end());
  result.rydberg_fraction.reserve(times.size());
  DriftTracker drift;
  drift.init(h, initial.amplitudes);

  VectorXcd phased(c0.size());
  VectorXcd psi;
  for (double t : times) {
    const double dt = t - initial.time;
    for (Index k = 0; k < c0.size(); ++k) phased[k] = c0[k] * std::exp(-kImag * (evals[k] * dt));
    psi = mul_real_complex(evecs, phased, false);
    result.rydberg_fraction.push_back(rydberg_fraction(h.basis(), psi));
    drift.update(h, psi);
  }
  result.max_norm_drift = drift.max_norm;
  result.max_energy_drift = drift.max_energy;
  result.final_state = ManyBodyState{h.basis_ptr(), std::move(psi), times.back()};
  return result;
}

// One adaptive Lanczos exponential step. Returns the achieved dt.
class LanczosStepper {
 public:
  LanczosStepper(const SpinHamiltonian& h, int krylov_dim, double error_rate, double dt_min,
                 std::size_t max_steps)
      : h_(h),
        m_(std::min<Index>(krylov_dim, static_cast<Index>(h.dim()))),
        error_rate_(error_rate),
        dt_min_(dt_min),
        max_steps_(max_steps),
        breakdown_floor_(1e-14 * std::max(1.0, h.norm_bound())) {
    dt_ = 1.0 / std::max(1.0, h.norm_bound());
  }

  // Advances psi in place from t to exactly t + span.
  void advance(VectorXcd& psi, double span) {
    double remaining = span;
    while (remaining > 0.0) {
      const double dt = std::min(dt_, remaining);
      const double done = try_step(psi, dt);
      remaining -= done;
      if (++steps_ > max_steps_)
        throw NonconvergenceError("propagation exceeded the step cap");
    }
  }

 private:
  // Lanczos tridiagonalization with full reorthogonalization, then the
  // small-matrix exponential. Returns the dt actually taken.
  double try_step(VectorXcd& psi, double dt_request) {
    const Index dim = psi.size();
    const double norm0 = psi.norm();
    if (norm0 == 0.0) throw std::invalid_argument("zero state");

    Eigen::MatrixXcd v(dim, m_);
    VectorXd diag(m_), offdiag(m_);
    v.col(0) = psi / norm0;
    Index used = m_;
    double next_beta = 0.0;
    VectorXcd w(dim);
    for (Index j = 0; j < m_; ++j) {
      h_.apply(v.col(j), w);
      const double a = v.col(j).dot(w).real();
      diag[j] = a;
      w -= a * v.col(j);
      if (j > 0) w -= offdiag[j - 1] * v.col(j - 1);
      for (Index k = 0; k <= j; ++k) w -= v.col(k).dot(w) * v.col(k);
      const double b = w.norm();
      if (j + 1 < m_) offdiag[j] = b;
      if (b < breakdown_floor_) {
        used = j + 1;  // invariant subspace: the step is exact
        next_beta = 0.0;
        break;
      }
      if (j + 1 < m_)
        v.col(j + 1) = w / b;
      else
        next_beta = b;
    }

    Eigen::MatrixXd t_small = Eigen::MatrixXd::Zero(used, used);
    for (Index j = 0; j < used; ++j) {
      t_small(j, j) = diag[j];
      if (j + 1 < used) {
        t_small(j, j + 1) = offdiag[j];
        t_small(j + 1, j) = offdiag[j];
      }
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> small(t_small);

    double dt = dt_request;
    for (;;) {
      // small_state = exp(-i dt T) e_1 = U exp(-i dt Theta) U^T e_1
      const VectorXd& theta = small.eigenvalues();
      const MatrixXd& u = small.eigenvectors();
      VectorXcd phase(used);
      for (Index k = 0; k < used; ++k)
        phase[k] = std::exp(-kImag * (theta[k] * dt)) * u(0, k);
      const VectorXcd small_state = mul_real_complex(u, phase, false);
      // residual-form local error estimate
      const double err = next_beta * std::abs(small_state[used - 1]) * dt;
      const double allowed = error_rate_ * dt * norm0;
      if (err <= allowed || next_beta == 0.0) {
        psi = norm0 * (v.leftCols(used) * small_state);
        const double growth = (err > 0.0) ? 0.9 * std::pow(allowed / err, 1.0 / (used / 2.0 + 1.0))
                                          : 2.0;
        dt_ = dt * std::clamp(growth, 0.3, 2.0);
        return dt;
      }
      dt *= std::clamp(0.7 * std::pow(allowed / err, 1.0 / (used / 2.0 + 1.0)), 0.1, 0.7);
      if (dt < dt_min_)
        throw NonconvergenceError(
            "step-size underflow: stiff Hamiltonian (check the r_min regularization)");
    }
  }

  const SpinHamiltonian& h_;
  Index m_;
  double error_rate_;
  double dt_min_;
  std::size_t max_steps_;
  double breakdown_floor_;
  double dt_ = 0.0;
  std::size_t steps_ = 0;
};

SingleTrajectory propagate_krylov(const SpinHamiltonian& h, const ManyBodyState& initial,
                                  std::span<const double> times, const PropagatorOptions& opts) {
  const double span = times.back() - initial.time;
  // Total error budget: the requested tolerance, floored so that the norm
  // stays within its own 1e-8 contract.
  const double budget = std::min(opts.tol, 1e-9);
  const double error_rate = span > 0.0 ? budget / span : budget;
  LanczosStepper stepper(h, opts.krylov_dim, error_rate, span * 1e-15, opts.max_steps);

  SingleTrajectory result;
  result.times.assign(times.begin(), times.end());
  result.rydberg_fraction.reserve(times.size());
  DriftTracker drift;
  drift.init(h, initial.amplitudes);

  VectorXcd psi = initial.amplitudes;
  double t = initial.time;
  for (double target : times) {
    if (target > t) stepper.advance(psi, target - t);
    t = target;
    result.rydberg_fraction.push_back(rydberg_fraction(h.basis(), psi));
    drift.update(h, psi);
  }
  result.max_norm_drift = drift.max_norm;
  result.max_energy_drift = drift.max_energy;
  result.final_state = ManyBodyState{h.basis_ptr(), std::move(psi), times.back()};
  return result;
}

}  // namespace

void PropagatorOptions::validate() const {
  if (!(tol > 0.0) || tol > 1e-3)
    throw std::invalid_argument("propagator tol must lie in (0, 1e-3]");
  if (krylov_dim < 2) throw std::invalid_argument("krylov_dim must be >= 2");
}

SingleTrajectory propagate(const SpinHamiltonian& h, const ManyBodyState& initial,
                           std::span<const double> times, const PropagatorOptions& opts) {
  opts.validate();
  if (!initial.basis || initial.basis->size() != h.dim())
    throw std::invalid_argument("state basis does not match the Hamiltonian");
  initial.check_normalized();
  check_grid(initial, times);

  if (h.dim() <= opts.dense_dim_cap) return propagate_dense(h, initial, times);
  return propagate_krylov(h, initial, times, opts);
}

ManyBodyState evolve(const SpinHamiltonian& h, const ManyBodyState& initial, double t,
                     const PropagatorOptions& opts) {
  const double grid[1] = {t};
  return propagate(h, initial, grid, opts).final_state;
}

std::vector<double> make_time_grid(double t_max, int points, bool log_linear) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  if (points < 2) throw std::invalid_argument("need at least 2 grid points");

  std::vector<double> grid;
  grid.reserve(points);
  grid.push_back(0.0);
  if (!log_linear) {
    for (int i = 1; i < points; ++i)
      grid.push_back(t_max * static_cast<double>(i) / (points - 1));
    return grid;
  }

  const double t_first = t_max * 1e-3;
  const double t_break = t_max * 0.25;
  const int n_log = std::max(1, (points - 1) / 2);
  const int n_lin = points - 1 - n_log;
  for (int i = 0; i < n_log; ++i) {
    const double frac = n_log > 1 ? static_cast<double>(i) / (n_log - 1) : 0.0;
    grid.push_back(t_first * std::pow(t_break / t_first, frac));
  }
  for (int j = 1; j <= n_lin; ++j)
    grid.push_back(t_break + (t_max - t_break) * static_cast<double>(j) / n_lin);
  return grid;
}

}  // namespace ryd
