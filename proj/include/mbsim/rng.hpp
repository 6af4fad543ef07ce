#pragma once

// Deterministic random stream: mt19937_64 plus an explicit Box-Muller
// transform, so that sampled sequences are identical across standard-library
// implementations (std::normal_distribution is not pinned by the standard).

#include <cstdint>
#include <random>

namespace mbsim {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();
  // Standard normal deviate (Box-Muller, spare cached).
  double normal();

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mbsim
