#include "rydscale/basis.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace ryd {

BasisSpec BasisSpec::full_basis(int n_atoms) {
  BasisSpec spec;
  spec.mode = Mode::full;
  spec.atom_count = n_atoms;
  spec.n_max = n_atoms;
  return spec;
}

BasisSpec BasisSpec::truncated(int n_atoms, int n_max) {
  BasisSpec spec;
  spec.mode = Mode::truncated;
  spec.atom_count = n_atoms;
  spec.n_max = n_max;
  return spec;
}

void BasisSpec::validate(int full_cap) const {
  if (atom_count < 1) throw std::invalid_argument("atom_count must be >= 1");
  if (atom_count > 64) throw std::invalid_argument("atom_count exceeds the 64-bit mask width");
  if (mode == Mode::full) {
    if (atom_count > full_cap)
      throw std::invalid_argument("full basis restricted to N <= " + std::to_string(full_cap) +
                                  " atoms (use a truncated basis)");
  } else {
    if (n_max < 1 || n_max > atom_count)
      throw std::invalid_argument("truncated basis requires 1 <= n_max <= N");
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

Basis Basis::build(const BasisSpec& spec, std::size_t state_cap, int full_cap) {
  spec.validate(full_cap);
  const int n = spec.atom_count;
  const int n_max = spec.effective_n_max();

  std::uint64_t count = 0;
  for (int k = 0; k <= n_max; ++k) {
    count += binomial(n, k);
    if (count > state_cap)
      throw std::invalid_argument("basis dimension exceeds the state cap of " +
                                  std::to_string(state_cap));
  }

  Basis basis;
  basis.atom_count_ = n;
  basis.n_max_ = n_max;
  basis.states_.reserve(count);
  basis.block_offset_.reserve(n_max + 2);

  for (int k = 0; k <= n_max; ++k) {
    basis.block_offset_.push_back(basis.states_.size());
    if (k == 0) {
      basis.states_.push_back(0);
      continue;
    }
    // Gosper's hack walks the k-subsets in increasing mask order.
    std::uint64_t mask = (k == 64) ? ~0ULL : ((1ULL << k) - 1);
    const std::uint64_t limit = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    while (true) {
      basis.states_.push_back(mask);
      if (k == n) break;
      const std::uint64_t c = mask & (~mask + 1);
      const std::uint64_t r = mask + c;
      if (r < mask || r > limit) break;  // r < mask: wraparound at the 64-bit edge
      mask = (((r ^ mask) >> 2) / c) | r;
      if (mask > limit) break;
    }
  }
  basis.block_offset_.push_back(basis.states_.size());
  return basis;
}

int Basis::excitations(std::size_t idx) const {
  return std::popcount(states_[idx]);
}

std::ptrdiff_t Basis::index_of(std::uint64_t mask) const {
  const int k = std::popcount(mask);
  if (k > n_max_) return -1;
  const auto first = states_.begin() + static_cast<std::ptrdiff_t>(block_offset_[k]);
  const auto last = states_.begin() + static_cast<std::ptrdiff_t>(block_offset_[k + 1]);
  const auto it = std::lower_bound(first, last, mask);
  if (it == last || *it != mask) return -1;
  return it - states_.begin();
}

}  // namespace ryd
