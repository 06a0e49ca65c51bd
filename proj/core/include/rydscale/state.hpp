#pragma once

#include <Eigen/Dense>
#include <memory>

#include "rydscale/basis.hpp"

namespace ryd {

// Normalized amplitude vector over a basis enumeration, tagged with the
// dimensionless time tau.
struct ManyBodyState {
  std::shared_ptr<const Basis> basis;
  Eigen::VectorXcd amplitudes;
  double time = 0.0;

  double squared_norm() const { return amplitudes.squaredNorm(); }
  void check_normalized(double tol = 1e-8) const;
};

// |g, g, ..., g> at tau = 0.
ManyBodyState ground_state(std::shared_ptr<const Basis> basis);

}  // namespace ryd
