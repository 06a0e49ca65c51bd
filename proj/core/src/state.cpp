#include "rydscale/state.hpp"

#include <cmath>
#include <stdexcept>

namespace ryd {

void ManyBodyState::check_normalized(double tol) const {
  if (std::abs(squared_norm() - 1.0) > tol)
    throw std::invalid_argument("state is not normalized");
}

ManyBodyState ground_state(std::shared_ptr<const Basis> basis) {
  if (!basis || basis->size() == 0) throw std::invalid_argument("empty basis");
  ManyBodyState state;
  state.basis = std::move(basis);
  state.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(state.basis->size()));
  // The all-ground mask is 0 and always enumerates first.
  state.amplitudes[0] = 1.0;
  state.time = 0.0;
  return state;
}

}  // namespace ryd
