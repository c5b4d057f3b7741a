// Seeded random streams with pinned transforms, so a (config, seed) pair
// reproduces byte-identical results independent of the standard library's
// distribution implementations.
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace coemo {

// Scrambles a 64-bit value; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for a named stream under a master seed. Streams with different tags
// are decorrelated; the same (master, tag) always yields the same seed.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method (second value cached).
  double normal();

  // Gamma(shape, 1) via Marsaglia-Tsang; shape > 0.
  double gamma(double shape);

  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

  // Draws an index from an unnormalized nonnegative weight vector.
  int categorical(const double* weights, int k);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace coemo
