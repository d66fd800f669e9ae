#pragma once

#include <cstdint>
#include <vector>

#include "pocdma/spreading.hpp"

namespace pocdma {

// Codebook enumeration keeps the full admissible set in memory, so the guard
// is tighter than the counting one.
inline constexpr int kCodebookGuardK = 20;

// All admissible codewords of an instance, each a length-K +-1 vector, in
// lexicographic order (-1 before +1). Throws capacity_error above the guard
// and std::runtime_error if the set comes out empty.
std::vector<std::vector<std::int8_t>> build_codebook(
    const SpreadingInstance& instance, int k_prime);

enum class Signaling {
  codebook,        // uniform draw from the admissible set
  uniform_random,  // uniform draw from all 2^K words (error-floor control)
};

struct LinkConfig {
  SpreadingInstance instance;
  int k_prime = 1;
  double noise_sigma = 0.0;  // per-chip noise standard deviation
  std::uint64_t frames = 1;
  std::uint64_t seed = 0;
  Signaling signaling = Signaling::codebook;
};

struct BerStats {
  std::uint64_t constrained_errors = 0;
  std::uint64_t constrained_bits = 0;
  std::uint64_t unconstrained_errors = 0;
  std::uint64_t unconstrained_bits = 0;
  double ber_constrained = 0.0;
  double ber_unconstrained = 0.0;
  std::vector<std::uint64_t> per_user_errors;  // length K diagnostic
};

// Per frame: draw a codeword, scale chips by 1/sqrt(N) (unit received energy
// per bit), add white Gaussian noise of deviation noise_sigma per chip, run
// each user's matched filter and decide by sign (sign(0) -> +1). Errors are
// accumulated separately for constrained (k < k_prime) and unconstrained
// users. Deterministic in (config, seed).
BerStats transmit_detect(const LinkConfig& config);

}  // namespace pocdma
