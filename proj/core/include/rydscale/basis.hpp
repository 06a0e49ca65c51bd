#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ryd {

// Basis selection: either all 2^N spin states or the states with at most
// n_max excitations (valid deep in the blockaded regime).
struct BasisSpec {
  enum class Mode { full, truncated };

  static constexpr int default_full_cap = 14;

  Mode mode = Mode::full;
  int atom_count = 1;
  int n_max = 0;  // truncated mode only

  static BasisSpec full_basis(int n_atoms);
  static BasisSpec truncated(int n_atoms, int n_max);

  void validate(int full_cap = default_full_cap) const;
  int effective_n_max() const { return mode == Mode::full ? atom_count : n_max; }
};

// Enumerated pseudospin basis. A state is a bitmask (bit i set = atom i in
// the Rydberg state), ordered by excitation number, then by mask value.
// Atom counts are capped at 64 by the mask width.
class Basis {
 public:
  static constexpr std::size_t default_state_cap = 5'000'000;

  static Basis build(const BasisSpec& spec, std::size_t state_cap = default_state_cap,
                     int full_cap = BasisSpec::default_full_cap);

  std::size_t size() const { return states_.size(); }
  std::uint64_t state(std::size_t idx) const { return states_[idx]; }
  std::span<const std::uint64_t> states() const { return states_; }
  int excitations(std::size_t idx) const;

  // Index of a mask in the enumeration, -1 when outside the basis.
  std::ptrdiff_t index_of(std::uint64_t mask) const;

  int atom_count() const { return atom_count_; }
  int max_excitations() const { return n_max_; }

 private:
  int atom_count_ = 0;
  int n_max_ = 0;
  std::vector<std::uint64_t> states_;
  std::vector<std::size_t> block_offset_;  // first index of each excitation-number block
};

// Exact binomial coefficient (n <= 64).
std::uint64_t binomial(int n, int k);

}  // namespace ryd
