#include "rydscale/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ryd {

SpinHamiltonian SpinHamiltonian::build(const AtomConfiguration& config, const ModelParams& params,
                                       const BasisSpec& spec, std::size_t state_cap,
                                       int full_cap) {
  params.validate();
  if (config.atom_count() != spec.atom_count)
    throw std::invalid_argument("configuration atom count does not match the basis spec");
  if (config.dimension != params.dimension)
    throw std::invalid_argument("configuration dimension does not match the model parameters");

  SpinHamiltonian h;
  h.basis_ = std::make_shared<Basis>(Basis::build(spec, state_cap, full_cap));
  h.coupling_ = params.alpha / 2.0;

  const int n = spec.atom_count;
  const int p = params.interaction_exponent;

  // Pairwise interaction table V_ij = 1/r_ij^p (units of E_c at unit density).
  Eigen::MatrixXd pair_energy = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double r = pair_distance(config, i, j);
      const double v = std::pow(r, -p);
      pair_energy(i, j) = v;
      pair_energy(j, i) = v;
    }
  }

  const Basis& basis = *h.basis_;
  const std::size_t dim = basis.size();
  h.diagonal_.resize(static_cast<Eigen::Index>(dim));

  for (std::size_t s = 0; s < dim; ++s) {
    const std::uint64_t mask = basis.state(s);
    const int excited = std::popcount(mask);
    double energy = -params.delta / 2.0 * (2.0 * excited - n);
    std::uint64_t rest = mask;
    while (rest) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      std::uint64_t rest2 = rest;
      while (rest2) {
        const int j = std::countr_zero(rest2);
        rest2 &= rest2 - 1;
        energy += pair_energy(i, j);
      }
    }
    h.diagonal_[static_cast<Eigen::Index>(s)] = energy;
  }

  // sigma_x connectivity: record each coupled pair once, walking flips that
  // raise the excitation number.
  for (std::size_t s = 0; s < dim; ++s) {
    const std::uint64_t mask = basis.state(s);
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bit = 1ULL << i;
      if (mask & bit) continue;
      const std::ptrdiff_t t = basis.index_of(mask | bit);
      if (t >= 0)
        h.flips_.emplace_back(static_cast<std::int32_t>(s), static_cast<std::int32_t>(t));
    }
  }
  return h;
}

void SpinHamiltonian::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  const Eigen::Index dim = diagonal_.size();
  y.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) y[i] = diagonal_[i] * x[i];
  for (const auto& [a, b] : flips_) {
    y[a] += coupling_ * x[b];
    y[b] += coupling_ * x[a];
  }
}

double SpinHamiltonian::expectation(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd hpsi(psi.size());
  apply(psi, hpsi);
  return psi.dot(hpsi).real();
}

Eigen::MatrixXd SpinHamiltonian::dense() const {
  const Eigen::Index dim = diagonal_.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  m.diagonal() = diagonal_;
  for (const auto& [a, b] : flips_) {
    m(a, b) = coupling_;
    m(b, a) = coupling_;
  }
  return m;
}

double SpinHamiltonian::norm_bound() const {
  Eigen::VectorXd row_offdiag = Eigen::VectorXd::Zero(diagonal_.size());
  for (const auto& [a, b] : flips_) {
    row_offdiag[a] += std::abs(coupling_);
    row_offdiag[b] += std::abs(coupling_);
  }
  return (diagonal_.cwiseAbs() + row_offdiag).maxCoeff();
}

}  // namespace ryd
