#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace isee {

using Engine = std::mt19937_64;

// Stream tags keep the draws of different operations independent even when
// they share a master seed.
namespace stream {
inline constexpr std::uint64_t permutation = 1;
inline constexpr std::uint64_t block_entries = 2;
inline constexpr std::uint64_t gaussian = 3;
inline constexpr std::uint64_t cv_split = 4;
inline constexpr std::uint64_t ensemble = 5;
inline constexpr std::uint64_t cv_seed = 6;
inline constexpr std::uint64_t replicate = 7;
}  // namespace stream

/// Engine seeded from the master seed and a path of stream identifiers.
inline Engine make_engine(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (path.size() + 1));
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (const auto v : path) push(v);
  std::seed_seq seq(words.begin(), words.end());
  return Engine(seq);
}

/// Seed for a sub-operation, derived deterministically from a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> path) {
  auto engine = make_engine(seed, path);
  return engine();
}

}  // namespace isee
