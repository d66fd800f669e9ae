#include "pocdma/spreading.hpp"

#include <stdexcept>
#include <string>

#include "pocdma/rng.hpp"

namespace pocdma {

SpreadingInstance gen_spreading(int k_users, int n_chips, std::uint64_t seed) {
  if (k_users < 1 || n_chips < 1) {
    throw std::domain_error("gen_spreading: need k_users >= 1 and n_chips >= 1");
  }
  SpreadingInstance inst;
  inst.k_users = k_users;
  inst.n_chips = n_chips;
  inst.seed = seed;
  inst.chips.resize(static_cast<std::size_t>(k_users) * n_chips);
  for (int k = 0; k < k_users; ++k) {
    for (int mu = 0; mu < n_chips; ++mu) {
      inst.chips[static_cast<std::size_t>(k) * n_chips + mu] =
          static_cast<std::int8_t>(chip_sign(seed, k, mu));
    }
  }
  inst.gram.resize(static_cast<std::size_t>(k_users) * k_users);
  for (int k = 0; k < k_users; ++k) {
    for (int i = k; i < k_users; ++i) {
      std::int32_t s = 0;
      const std::int8_t* row_k = &inst.chips[static_cast<std::size_t>(k) * n_chips];
      const std::int8_t* row_i = &inst.chips[static_cast<std::size_t>(i) * n_chips];
      for (int mu = 0; mu < n_chips; ++mu) {
        s += static_cast<std::int32_t>(row_k[mu]) * row_i[mu];
      }
      inst.gram[static_cast<std::size_t>(k) * k_users + i] = s;
      inst.gram[static_cast<std::size_t>(i) * k_users + k] = s;
    }
  }
  return inst;
}

}  // namespace pocdma
