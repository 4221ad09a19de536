#pragma once

#include <cstdint>

namespace glstat {

// Splittable counter-seeded 64-bit generator (splitmix64 update).
// Replicate r of a run with master seed s uses Rng::stream(s, r), so
// parallel replicates draw from independent streams and results do not
// depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform01();
  // Standard normal via inverse-CDF transform (one uniform per draw).
  double normal();

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace glstat
