#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "rydscale/basis.hpp"
#include "rydscale/ensemble.hpp"
#include "rydscale/params.hpp"

namespace ryd {

// Dimensionless pseudospin Hamiltonian over a fixed basis:
//
//   H = -(Delta/2) sum_i sigma_z^(i) + (alpha/2) sum_i sigma_x^(i)
//       + sum_{j<i} P_ee^(i) P_ee^(j) / r_ij^p
//
// with sigma_z = +1 on the excited state, P_ee = (1 + sigma_z)/2, and all
// energies in units of E_c. The matrix is real symmetric: a diagonal plus
// single-spin-flip couplings that all equal alpha/2. Flips that would leave
// a truncated basis are dropped.
class SpinHamiltonian {
 public:
  static SpinHamiltonian build(const AtomConfiguration& config, const ModelParams& params,
                               const BasisSpec& spec,
                               std::size_t state_cap = Basis::default_state_cap,
                               int full_cap = BasisSpec::default_full_cap);

  const Basis& basis() const { return *basis_; }
  std::shared_ptr<const Basis> basis_ptr() const { return basis_; }
  std::size_t dim() const { return basis_->size(); }

  const Eigen::VectorXd& diagonal() const { return diagonal_; }
  double coupling() const { return coupling_; }  // alpha/2
  std::span<const std::pair<std::int32_t, std::int32_t>> flip_pairs() const { return flips_; }

  // y = H x
  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
  double expectation(const Eigen::VectorXcd& psi) const;  // <psi|H|psi>

  Eigen::MatrixXd dense() const;
  double norm_bound() const;  // Gershgorin bound on the spectral radius

 private:
  std::shared_ptr<const Basis> basis_;
  Eigen::VectorXd diagonal_;
  std::vector<std::pair<std::int32_t, std::int32_t>> flips_;
  double coupling_ = 0.0;
};

}  // namespace ryd
