#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "pocdma/spreading.hpp"

namespace pocdma {

// Raised when an exhaustive enumeration is requested above the K guard.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 2^30 sign-sum updates is desk-scale minutes; anything larger would need a
// sampling estimator, which this module does not provide.
inline constexpr int kEnumerationGuardK = 30;

// Pseudo-orthogonality predicate: true iff b_k * sum_i rho_ki b_i > 0 for
// every constrained user k < k_prime (0-based). Evaluated on the integer
// score b_k * sum_i gram_ki b_i, so exact ties (score 0) are rejected
// deterministically. codeword entries must be +-1.
bool is_po_codeword(const SpreadingInstance& instance,
                    std::span<const std::int8_t> codeword, int k_prime);

// Exact number of admissible codewords among all 2^K. Walks the codewords in
// Gray-code order, maintaining the K running scores under single-bit flips.
// Throws capacity_error for K above the guard.
std::uint64_t count_codewords(const SpreadingInstance& instance, int k_prime);

struct CodewordCountStats {
  int k_users = 0;
  int n_chips = 0;
  int k_prime = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> counts;  // per instance, instance i seeded by instance_seed(master, i)
  double h_emp_bits = 0.0;            // mean of log2(count)/K
  double h_emp_stderr = 0.0;
  double cv_log2_count = 0.0;         // self-averaging diagnostic
  int instances = 0;                  // instances entering the statistics
  int anomalies = 0;                  // zero-count instances excluded (logged to stderr)
};

// Draws `instances` spreading instances under the master seed and counts each
// one. Instance counting runs on up to `threads` workers; the statistics are
// aggregated in instance order, so results are independent of thread count.
CodewordCountStats empirical_entropy(int k_users, int n_chips, int k_prime,
                                     int instances, std::uint64_t seed,
                                     int threads = 1);

// Finite-size stand-in for the asymptotic fraction: round(gamma * K),
// clamped to [1, K].
int k_prime_for_gamma(double gamma, int k_users);

// Golden-count regression fixture, one `seed,K,N,k_prime,count` line per
// record. '#' lines and blank lines are ignored on parse.
struct GoldenCountRecord {
  std::uint64_t seed = 0;
  int k_users = 0;
  int n_chips = 0;
  int k_prime = 0;
  std::uint64_t count = 0;
};

std::vector<GoldenCountRecord> parse_golden_counts(std::istream& in);
void write_golden_counts(std::ostream& out,
                         const std::vector<GoldenCountRecord>& records);

}  // namespace pocdma
