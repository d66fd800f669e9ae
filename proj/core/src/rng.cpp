#include "pocdma/rng.hpp"

#include <cmath>
#include <numbers>

namespace pocdma {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStreamTweak = 0xC2B2AE3D27D4EB4Full;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

std::uint64_t hash2(std::uint64_t seed, std::uint64_t i) {
  return mix64(seed + kGolden * (i + 1));
}

std::uint64_t hash3(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  return mix64(hash2(seed, i) ^ (kStreamTweak * (j + 1)));
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::uint64_t index) {
  return hash2(master_seed, index);
}

int chip_sign(std::uint64_t seed, std::uint64_t user, std::uint64_t chip) {
  return (hash3(seed, user, chip) >> 63) ? 1 : -1;
}

double uniform01(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double counter_normal(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  const double u1 = uniform01(hash3(seed, i, 2 * j));
  const double u2 = uniform01(hash3(seed, i, 2 * j + 1));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t bounded_index(std::uint64_t bits, std::uint64_t bound) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(bits) * bound) >> 64);
}

}  // namespace pocdma
