#pragma once

#include <cstdint>
#include <random>

namespace sparsekit {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for the stream named `tag` under `parent`. Streams form a tree:
/// trial t of a cell is derive_seed(derive_seed(master, cell), t), so every
/// trial draws from its own generator regardless of execution order.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) noexcept {
  return mix64(parent ^ mix64(tag ^ 0x243f6a8885a308d3ULL));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace sparsekit
