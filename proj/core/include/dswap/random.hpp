#pragma once

#include <cstdint>
#include <random>

namespace dswap {

using Rng = std::mt19937_64;

// Independent named streams derived from one run seed. Each consumer of
// randomness (placement, requests, migration choices, weights) draws from its
// own stream so that changing one does not perturb the others.
enum class Stream : std::uint32_t {
  placement = 1,
  requests = 2,
  migration = 3,
  weights = 4,
};

inline Rng make_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

}  // namespace dswap
