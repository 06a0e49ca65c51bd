#include "rydscale/disorder.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "rydscale/errors.hpp"
#include "rydscale/rng.hpp"

namespace ryd {

namespace {

AtomConfiguration draw_configuration(const DisorderJob& job, int k) {
  const std::uint64_t seed = mix_seed(job.master_seed, static_cast<std::uint64_t>(k));
  if (job.ensemble.kind == GeometryKind::periodic_box)
    return sample_uniform(job.atom_count, job.params.dimension, seed, job.ensemble.r_min);
  if (job.ensemble.kind == GeometryKind::open_gaussian)
    return sample_gaussian_cloud(
        job.atom_count,
        std::span<const double>(job.ensemble.sigmas.data(),
                                static_cast<std::size_t>(job.params.dimension)),
        seed, job.ensemble.r_min);
  throw std::invalid_argument("unsupported ensemble geometry for disorder averaging");
}

// Runs `work(k)` for k in [0, count), on job.threads threads. Exceptions are
// rethrown (first one wins) after all workers join.
void parallel_for(int count, int threads, const std::function<void(int)>& work) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int k = 0; k < count; ++k) work(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int k = next.fetch_add(1);
        if (k >= count) return;
        try {
          work(k);
        } catch (...) {
          std::scoped_lock lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ExcitationTrajectory reduce(const std::vector<std::vector<double>>& per_realization,
                            const std::vector<double>& times) {
  const int count = static_cast<int>(per_realization.size());
  const std::size_t n_t = times.size();
  ExcitationTrajectory out;
  out.times = times;
  out.f_mean.assign(n_t, 0.0);
  out.f_stderr.assign(n_t, 0.0);
  out.realization_count = count;
  for (std::size_t i = 0; i < n_t; ++i) {
    double sum = 0.0;
    for (int k = 0; k < count; ++k) sum += per_realization[k][i];
    const double mean = sum / count;
    out.f_mean[i] = mean;
    if (count > 1) {
      double ss = 0.0;
      for (int k = 0; k < count; ++k) {
        const double d = per_realization[k][i] - mean;
        ss += d * d;
      }
      out.f_stderr[i] = std::sqrt(ss / (static_cast<double>(count) * (count - 1)));
    }
  }
  return out;
}

void validate_job(const DisorderJob& job) {
  job.params.validate();
  if (job.atom_count < 1) throw std::invalid_argument("atom_count must be >= 1");
  if (job.realizations < 1) throw std::invalid_argument("realizations must be >= 1");
  if (job.times.empty()) throw std::invalid_argument("empty time grid");
}

}  // namespace

double saturation_plateau(std::span<const double> values, double window) {
  if (values.empty()) throw std::invalid_argument("empty trajectory");
  const std::size_t n = values.size();
  const std::size_t tail = std::max<std::size_t>(1, static_cast<std::size_t>(window * n));
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += values[i];
  return sum / static_cast<double>(tail);
}

ExcitationTrajectory disorder_average(const DisorderJob& job) {
  validate_job(job);
  std::vector<std::vector<double>> per_realization(job.realizations);
  parallel_for(job.realizations, job.threads, [&](int k) {
    try {
      const AtomConfiguration config = draw_configuration(job, k);
      const SpinHamiltonian h = SpinHamiltonian::build(config, job.params, job.basis);
      const SingleTrajectory traj =
          propagate(h, ground_state(h.basis_ptr()), job.times, job.propagator);
      per_realization[k] = traj.rydberg_fraction;
    } catch (const std::exception& e) {
      throw NonconvergenceError("realization " + std::to_string(k) + " (seed " +
                                std::to_string(mix_seed(job.master_seed, k)) +
                                ") failed: " + e.what());
    }
  });
  return reduce(per_realization, job.times);
}

AdaptiveTrajectory propagate_adaptive(const AtomConfiguration& config, const ModelParams& params,
                                      std::span<const double> times,
                                      const PropagatorOptions& opts,
                                      const AdaptiveOptions& adaptive) {
  const int n = config.atom_count();
  if (adaptive.n_max_start < 1) throw std::invalid_argument("n_max_start must be >= 1");

  AdaptiveTrajectory out;
  SingleTrajectory prev;
  double prev_plateau = 0.0;
  for (int n_max = std::min(adaptive.n_max_start, n); n_max <= n; ++n_max) {
    const BasisSpec spec = BasisSpec::truncated(n, n_max);
    const SpinHamiltonian h = SpinHamiltonian::build(config, params, spec);
    SingleTrajectory current = propagate(h, ground_state(h.basis_ptr()), times, opts);
    const double plateau = saturation_plateau(current.rydberg_fraction, adaptive.plateau_window);

    if (n_max > std::min(adaptive.n_max_start, n)) {
      double pointwise = 0.0;
      for (std::size_t i = 0; i < times.size(); ++i)
        pointwise = std::max(pointwise,
                             std::abs(current.rydberg_fraction[i] - prev.rydberg_fraction[i]));
      const double plateau_change =
          std::abs(plateau - prev_plateau) / std::max(plateau, 1e-300);
      out.plateau_change = plateau_change;
      out.pointwise_change = pointwise;
      const bool plateau_ok = plateau_change < adaptive.plateau_rel_tol;
      const bool pointwise_ok = std::isfinite(adaptive.pointwise_abs_tol) &&
                                pointwise < adaptive.pointwise_abs_tol;
      if (plateau_ok || pointwise_ok) {
        out.trajectory = std::move(current);
        out.n_max = n_max;
        return out;
      }
    }
    prev = std::move(current);
    prev_plateau = plateau;
    out.trajectory = prev;
    out.n_max = n_max;
  }
  return out;  // walked all the way to the full basis
}

AdaptiveDisorderResult disorder_average_adaptive(const DisorderJob& job,
                                                 const AdaptiveOptions& adaptive) {
  validate_job(job);
  std::vector<std::vector<double>> per_realization(job.realizations);
  std::vector<int> n_max_used(job.realizations, 0);
  parallel_for(job.realizations, job.threads, [&](int k) {
    try {
      const AtomConfiguration config = draw_configuration(job, k);
      AdaptiveTrajectory traj =
          propagate_adaptive(config, job.params, job.times, job.propagator, adaptive);
      per_realization[k] = std::move(traj.trajectory.rydberg_fraction);
      n_max_used[k] = traj.n_max;
    } catch (const std::exception& e) {
      throw NonconvergenceError("realization " + std::to_string(k) + " (seed " +
                                std::to_string(mix_seed(job.master_seed, k)) +
                                ") failed: " + e.what());
    }
  });
  AdaptiveDisorderResult out;
  out.trajectory = reduce(per_realization, job.times);
  for (int used : n_max_used) out.max_n_max = std::max(out.max_n_max, used);
  return out;
}

}  // namespace ryd
