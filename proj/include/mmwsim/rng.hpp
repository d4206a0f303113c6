#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mmwsim {

using Rng = std::mt19937_64;

// Named substreams hanging off a per-drop seed. Values are part of the
// reproducibility contract; never renumber.
enum class Stream : std::uint64_t {
  kPlacement = 1,
  kBlockage = 2,
  kPrediction = 3,
  kTieBreak = 4,
  kDrop = 5,
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a child seed from a parent seed and a path of indices. Used for
// master -> drop and drop -> (stream, ue, window) splitting.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = mix64(parent);
  for (std::uint64_t p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

inline std::uint64_t drop_seed(std::uint64_t master_seed, std::uint64_t drop_index) noexcept {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(Stream::kDrop), drop_index});
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(derive_seed(seed, {static_cast<std::uint64_t>(stream), index}));
}

}  // namespace mmwsim
