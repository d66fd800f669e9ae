#include "pocdma/link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gray_walk.hpp"
#include "pocdma/counting.hpp"
#include "pocdma/rng.hpp"

namespace pocdma {

namespace {
constexpr std::uint64_t kStreamCodeword = 1;
constexpr std::uint64_t kStreamNoise = 2;
}  // namespace

std::vector<std::vector<std::int8_t>> build_codebook(
    const SpreadingInstance& instance, int k_prime) {
  if (instance.k_users > kCodebookGuardK) {
    throw capacity_error("build_codebook: K=" + std::to_string(instance.k_users) +
                         " exceeds the K<=" + std::to_string(kCodebookGuardK) +
                         " codebook guard");
  }
  if (k_prime < 1 || k_prime > instance.k_users) {
    throw std::domain_error("build_codebook: k_prime must lie in [1, K]");
  }
  std::vector<std::uint32_t> masks;
  detail::walk_admissible(instance, k_prime,
                          [&](std::uint32_t lex) { masks.push_back(lex); });
  if (masks.empty()) {
    throw std::runtime_error("build_codebook: admissible set is empty, cannot signal");
  }
  std::sort(masks.begin(), masks.end());

  const int K = instance.k_users;
  std::vector<std::vector<std::int8_t>> book(masks.size(),
                                             std::vector<std::int8_t>(K));
  for (std::size_t w = 0; w < masks.size(); ++w) {
    for (int k = 0; k < K; ++k) {
      book[w][k] = (masks[w] >> (K - 1 - k)) & 1u ? 1 : -1;
    }
  }
  return book;
}

BerStats transmit_detect(const LinkConfig& config) {
  const SpreadingInstance& inst = config.instance;
  const int K = inst.k_users;
  const int N = inst.n_chips;
  const int k_prime = config.k_prime;
  if (k_prime < 1 || k_prime > K) {
    throw std::domain_error("transmit_detect: k_prime must lie in [1, K]");
  }
  if (config.frames < 1) {
    throw std::domain_error("transmit_detect: frames must be >= 1");
  }
  if (!(config.noise_sigma >= 0.0) || !std::isfinite(config.noise_sigma)) {
    throw std::domain_error("transmit_detect: noise_sigma must be finite and >= 0");
  }

  std::vector<std::vector<std::int8_t>> codebook;
  if (config.signaling == Signaling::codebook) {
    codebook = build_codebook(inst, k_prime);
  }

  const double sigma = config.noise_sigma;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(N));
  const std::uint64_t pick_key = hash2(config.seed, kStreamCodeword);
  const std::uint64_t noise_key = hash2(config.seed, kStreamNoise);

  BerStats st;
  st.per_user_errors.assign(K, 0);
  std::vector<std::int8_t> word(K);
  std::vector<double> noise(N);

  for (std::uint64_t f = 0; f < config.frames; ++f) {
    if (config.signaling == Signaling::codebook) {
      const std::uint64_t idx =
          bounded_index(hash2(pick_key, f), codebook.size());
      word = codebook[idx];
    } else {
      const std::uint64_t bits = hash2(pick_key, f);
      for (int k = 0; k < K; ++k) word[k] = (bits >> k) & 1u ? 1 : -1;
    }

    if (sigma > 0.0) {
      for (int mu = 0; mu < N; ++mu) {
        noise[mu] = sigma * counter_normal(noise_key, f, mu);
      }
    }

    for (int k = 0; k < K; ++k) {
      // Matched filter output: the signal part comes from the exact integer
      // Gram scores, the noise part is the chip-projected Gaussian.
      std::int64_t score = 0;
      for (int i = 0; i < K; ++i) {
        score += static_cast<std::int64_t>(inst.gram_at(k, i)) * word[i];
      }
      double y = static_cast<double>(score) / N;
      if (sigma > 0.0) {
        double acc = 0.0;
        const std::int8_t* row = &inst.chips[static_cast<std::size_t>(k) * N];
        for (int mu = 0; mu < N; ++mu) acc += row[mu] * noise[mu];
        y += inv_sqrt_n * acc;
      }
      const std::int8_t decided = y < 0.0 ? -1 : 1;  // sign(0) -> +1
      if (decided != word[k]) {
        ++st.per_user_errors[k];
        if (k < k_prime) {
          ++st.constrained_errors;
        } else {
          ++st.unconstrained_errors;
        }
      }
    }
  }

  st.constrained_bits = config.frames * static_cast<std::uint64_t>(k_prime);
  st.unconstrained_bits = config.frames * static_cast<std::uint64_t>(K - k_prime);
  st.ber_constrained =
      st.constrained_bits
          ? static_cast<double>(st.constrained_errors) / st.constrained_bits
          : 0.0;
  st.ber_unconstrained =
      st.unconstrained_bits
          ? static_cast<double>(st.unconstrained_errors) / st.unconstrained_bits
          : 0.0;
  return st;
}

}  // namespace pocdma
