#pragma once

#include <cstdint>
#include <vector>

namespace pocdma {

// One finite random spreading draw: K users, N binary chips each, plus the
// exact integer Gram matrix of the signatures. All admissibility arithmetic
// downstream runs on the integer Gram entries; the normalized
// crosscorrelation rho = gram/N is derived, never stored, so exact ties
// stay exact.
struct SpreadingInstance {
  int k_users = 0;
  int n_chips = 0;
  std::uint64_t seed = 0;
  std::vector<std::int8_t> chips;  // k_users x n_chips, row-major, entries +-1
  std::vector<std::int32_t> gram;  // k_users x k_users, sum_mu s_k s_i

  std::int8_t chip(int user, int mu) const { return chips[static_cast<std::size_t>(user) * n_chips + mu]; }
  std::int32_t gram_at(int k, int i) const { return gram[static_cast<std::size_t>(k) * k_users + i]; }
  double crosscorr(int k, int i) const { return static_cast<double>(gram_at(k, i)) / n_chips; }
};

// Chips drawn i.i.d. uniform on {-1, +1} from the counter generator keyed by
// (seed, user, chip). Same seed, same instance, on any platform.
SpreadingInstance gen_spreading(int k_users, int n_chips, std::uint64_t seed);

}  // namespace pocdma
