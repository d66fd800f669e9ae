#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "pocdma/spreading.hpp"

namespace pocdma::detail {

// Visits all 2^K codewords in reflected Gray-code order, maintaining the K
// integer scores m_k = sum_i gram_ki b_i under single-bit flips (O(K) per
// codeword). Calls on_admissible(lex_mask) for every codeword whose first
// k_prime users all satisfy b_k m_k > 0. lex_mask has bit (K-1-k) set iff
// b_k = +1, so masks sort in lexicographic sign-vector order.
template <typename F>
void walk_admissible(const SpreadingInstance& inst, int k_prime,
                     F&& on_admissible) {
  const int K = inst.k_users;
  std::vector<std::int64_t> m(K);
  std::vector<std::int8_t> b(K, -1);
  for (int k = 0; k < K; ++k) {
    std::int64_t s = 0;
    for (int i = 0; i < K; ++i) s += inst.gram_at(k, i);
    m[k] = -s;
  }

  auto admissible = [&]() {
    for (int k = 0; k < k_prime; ++k) {
      if (b[k] * m[k] <= 0) return false;
    }
    return true;
  };

  std::uint32_t lex = 0;  // the all -1 word
  if (admissible()) on_admissible(lex);
  const std::uint64_t total = std::uint64_t{1} << K;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    const int j = std::countr_zero(idx);
    const std::int8_t flipped = static_cast<std::int8_t>(-b[j]);
    b[j] = flipped;
    const std::int64_t delta = 2 * static_cast<std::int64_t>(flipped);
    const std::int32_t* col = &inst.gram[static_cast<std::size_t>(j) * K];
    for (int k = 0; k < K; ++k) m[k] += delta * col[k];
    lex ^= std::uint32_t{1} << (K - 1 - j);
    if (admissible()) on_admissible(lex);
  }
}

}  // namespace pocdma::detail
