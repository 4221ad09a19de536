#include "glstat/rng.hpp"

#include "glstat/special.hpp"

namespace glstat {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : state_(mix64(seed)) {}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  Rng r(0);
  r.state_ = mix64(mix64(seed) + 0x9e3779b97f4a7c15ull * (index + 1));
  return r;
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u = uniform01();
  if (u <= 0.0) u = 0x1.0p-53;
  return normal_inverse(u);
}

}  // namespace glstat
