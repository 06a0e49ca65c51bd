#pragma once

#include <cstdint>
#include <random>

namespace ryd {

// Derives the seed of realization k from a master seed (splitmix64 of
// master + k). Disorder sweeps stay reproducible no matter how the
// realizations are scheduled.
std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t k);

// mt19937_64 with fixed uniform/normal mappings. The standard <random>
// distributions are implementation-defined, which would break bit-for-bit
// reproducibility across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();                    // [0, 1), 53-bit resolution
  double uniform(double a, double b);  // [a, b)
  double normal();                     // standard normal, Box-Muller

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace ryd
