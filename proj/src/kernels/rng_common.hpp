#pragma once

#include <cstdint>

namespace fblrelay::kernels::detail {

// Counter-based generator: every variate is a pure function of
// (seed, stream, draw index), so sampling is reproducible independent of
// chunking and thread count. The state walk is a Weyl sequence through the
// SplitMix64 finalizer.
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix_fin(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t seed_base(std::uint64_t seed) { return mix_fin(seed + kGolden); }

// Up to 4 interleaved streams per draw index.
inline std::uint64_t raw_at(std::uint64_t sbase, std::uint32_t stream, std::uint64_t index) {
  const std::uint64_t counter = index * 4 + stream;
  return mix_fin(sbase + counter * kGolden);
}

// Uniform on (0, 1], 52-bit resolution; 1 is hit with probability 2^-52 and
// maps to an exponential draw of exactly 0.
inline double unit_from_raw(std::uint64_t r) {
  return static_cast<double>((r >> 12) + 1) * 0x1p-52;
}

}  // namespace fblrelay::kernels::detail
