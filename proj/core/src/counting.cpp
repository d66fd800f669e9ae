#include "pocdma/counting.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <thread>

#include "gray_walk.hpp"
#include "pocdma/rng.hpp"

namespace pocdma {

namespace {

void validate_k_prime(const SpreadingInstance& inst, int k_prime) {
  if (k_prime < 1 || k_prime > inst.k_users) {
    throw std::domain_error("k_prime must lie in [1, K], got " +
                            std::to_string(k_prime));
  }
}

}  // namespace

bool is_po_codeword(const SpreadingInstance& instance,
                    std::span<const std::int8_t> codeword, int k_prime) {
  const int K = instance.k_users;
  validate_k_prime(instance, k_prime);
  if (static_cast<int>(codeword.size()) != K) {
    throw std::domain_error("is_po_codeword: codeword length " +
                            std::to_string(codeword.size()) + " != K = " +
                            std::to_string(K));
  }
  for (const std::int8_t v : codeword) {
    if (v != 1 && v != -1) {
      throw std::domain_error("is_po_codeword: codeword entries must be +-1");
    }
  }
  for (int k = 0; k < k_prime; ++k) {
    std::int64_t score = 0;
    for (int i = 0; i < K; ++i) {
      score += static_cast<std::int64_t>(instance.gram_at(k, i)) * codeword[i];
    }
    if (codeword[k] * score <= 0) return false;
  }
  return true;
}

std::uint64_t count_codewords(const SpreadingInstance& instance, int k_prime) {
  if (instance.k_users > kEnumerationGuardK) {
    throw capacity_error(
        "count_codewords: K=" + std::to_string(instance.k_users) +
        " exceeds the K<=" + std::to_string(kEnumerationGuardK) +
        " exhaustive-enumeration guard; a sampling estimator is not provided");
  }
  validate_k_prime(instance, k_prime);
  std::uint64_t count = 0;
  detail::walk_admissible(instance, k_prime, [&](std::uint32_t) { ++count; });
  return count;
}

CodewordCountStats empirical_entropy(int k_users, int n_chips, int k_prime,
                                     int instances, std::uint64_t seed,
                                     int threads) {
  if (instances < 1) {
    throw std::domain_error("empirical_entropy: instances must be >= 1");
  }
  if (k_users > kEnumerationGuardK) {
    throw capacity_error("empirical_entropy: K=" + std::to_string(k_users) +
                         " exceeds the K<=" + std::to_string(kEnumerationGuardK) +
                         " exhaustive-enumeration guard");
  }

  CodewordCountStats stats;
  stats.k_users = k_users;
  stats.n_chips = n_chips;
  stats.k_prime = k_prime;
  stats.master_seed = seed;
  stats.counts.resize(instances);

  auto count_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const SpreadingInstance inst =
          gen_spreading(k_users, n_chips, instance_seed(seed, i));
      stats.counts[i] = count_codewords(inst, k_prime);
    }
  };

  const int workers = std::min(std::max(threads, 1), instances);
  if (workers <= 1) {
    count_range(0, instances);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (instances + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(instances, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(count_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Aggregate in instance order; results do not depend on the worker split.
  std::vector<double> vals;
  vals.reserve(instances);
  for (int i = 0; i < instances; ++i) {
    if (stats.counts[i] == 0) {
      // Cannot happen for the sign-symmetric ensemble (the maximizer of
      // b^T S b is always admissible), but a zero would silently poison the
      // log; exclude and flag it loudly instead.
      ++stats.anomalies;
      std::fprintf(stderr,
                   "empirical_entropy: WARNING zero-count instance excluded "
                   "(seed=%" PRIu64 " K=%d N=%d k_prime=%d index=%d)\n",
                   instance_seed(seed, i), k_users, n_chips, k_prime, i);
      continue;
    }
    vals.push_back(std::log2(static_cast<double>(stats.counts[i])) / k_users);
  }
  stats.instances = static_cast<int>(vals.size());
  if (stats.instances == 0) return stats;

  double mean = 0.0;
  for (const double v : vals) mean += v;
  mean /= stats.instances;
  double var = 0.0;
  for (const double v : vals) var += (v - mean) * (v - mean);
  var = stats.instances > 1 ? var / (stats.instances - 1) : 0.0;
  const double sd = std::sqrt(var);
  stats.h_emp_bits = mean;
  stats.h_emp_stderr = sd / std::sqrt(static_cast<double>(stats.instances));
  stats.cv_log2_count = mean > 0.0 ? sd / mean : 0.0;
  return stats;
}

int k_prime_for_gamma(double gamma, int k_users) {
  if (!(gamma > 0.0) || !(gamma <= 1.0)) {
    throw std::domain_error("k_prime_for_gamma: gamma must lie in (0, 1]");
  }
  if (k_users < 1) throw std::domain_error("k_prime_for_gamma: K must be >= 1");
  const long long rounded = std::llround(gamma * k_users);
  if (rounded < 1) return 1;
  if (rounded > k_users) return k_users;
  return static_cast<int>(rounded);
}

std::vector<GoldenCountRecord> parse_golden_counts(std::istream& in) {
  std::vector<GoldenCountRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    GoldenCountRecord rec;
    if (std::sscanf(line.c_str(), "%" SCNu64 ",%d,%d,%d,%" SCNu64, &rec.seed,
                    &rec.k_users, &rec.n_chips, &rec.k_prime,
                    &rec.count) != 5) {
      throw std::runtime_error("parse_golden_counts: malformed line " +
                               std::to_string(lineno) + ": '" + line + "'");
    }
    records.push_back(rec);
  }
  return records;
}

void write_golden_counts(std::ostream& out,
                         const std::vector<GoldenCountRecord>& records) {
  for (const auto& rec : records) {
    out << rec.seed << ',' << rec.k_users << ',' << rec.n_chips << ','
        << rec.k_prime << ',' << rec.count << '\n';
  }
}

}  // namespace pocdma
