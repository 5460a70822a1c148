#pragma once

#include <cstdint>

namespace maxmin {

// Counter-based uniforms: the draw for (seed, index, lane) is a pure
// function of its arguments, so Monte Carlo sums do not depend on how
// sample ranges are scheduled across threads.

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform on [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t lane) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(lane + 0x632be59bd9b4e019ULL));
  const std::uint64_t bits = splitmix64(key ^ splitmix64(index));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace maxmin
