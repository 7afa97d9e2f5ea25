#pragma once

#include <cmath>
#include <cstdint>

namespace kernelab {

/// Counter-based random numbers: every variate is a pure function of
/// (seed, stream, index), so draws are reproducible bit for bit regardless
/// of evaluation order or thread count.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                         std::uint64_t salt) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ index);
  h = splitmix64(h ^ salt);
  return h;
}

/// Uniform draw in the open interval (0, 1).
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                      std::uint64_t salt = 0) {
  const std::uint64_t h = mix(seed, stream, index, salt);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on two counter-derived uniforms.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const double u1 = uniform(seed, stream, index, 0xb5297a4d);
  const double u2 = uniform(seed, stream, index, 0x68e31da4);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace rng
}  // namespace kernelab
