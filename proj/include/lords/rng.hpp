#pragma once

#include <cstdint>

namespace lords::rng {

// splitmix64 finalizer; full-period bijective mix on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed for an independent child stream. Used for per-node noise streams
// (salt = node position in the validated order) and for per-replication
// dataset seeds (salt = replication index). Forcing a node consumes nothing
// from any other node's stream, so interventions leave non-descendant columns
// bit-identical at the same seed.
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t salt) noexcept {
  return mix64(master ^ mix64(salt + 1));
}

}  // namespace lords::rng
