#pragma once

#include <cstdint>
#include <memory>

#include "homlab/colored_graph.hpp"

namespace homlab {

/// Deterministic cross-platform generator (splitmix64). Used everywhere a
/// seeded corpus is needed; no ambient entropy anywhere in the library.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(next() % n);
  }
};

/// A random colored graph: vertex colors uniform over P, each pair a nonedge
/// with probability zero_permille/1000 and otherwise a uniform non-minimum
/// color of Q. Byte-stable for a fixed seed.
ColoredGraph random_graph(std::shared_ptr<const Poset> P,
                          std::shared_ptr<const Poset> Q, int vertices,
                          std::uint64_t seed, int zero_permille = 500);

}  // namespace homlab
