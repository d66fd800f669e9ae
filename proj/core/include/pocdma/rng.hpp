#pragma once

#include <cstdint>

// Counter-based randomness: every draw is a pure hash of (seed, coordinates),
// so instances are reproducible bit-for-bit and parallel generation does not
// depend on evaluation order.

namespace pocdma {

// SplitMix64 finalizer (Stafford mix 13).
std::uint64_t mix64(std::uint64_t x);

// Keyed hashes of one and two counters.
std::uint64_t hash2(std::uint64_t seed, std::uint64_t i);
std::uint64_t hash3(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

// Seed for the index-th instance drawn under a master seed.
std::uint64_t instance_seed(std::uint64_t master_seed, std::uint64_t index);

// One random chip, +1 or -1.
int chip_sign(std::uint64_t seed, std::uint64_t user, std::uint64_t chip);

// Map 64 random bits to (0, 1); never returns 0 or 1.
double uniform01(std::uint64_t bits);

// Standard normal draw addressed by (seed, i, j), via Box-Muller on two
// counter hashes.
double counter_normal(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

// Index in [0, bound) from 64 random bits (multiply-shift; bias is O(bound /
// 2^64)). bound must be nonzero.
std::uint64_t bounded_index(std::uint64_t bits, std::uint64_t bound);

}  // namespace pocdma
