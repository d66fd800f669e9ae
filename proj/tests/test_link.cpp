#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pocdma/counting.hpp"
#include "pocdma/link.hpp"
#include "pocdma/rng.hpp"
#include "pocdma/spreading.hpp"

using namespace pocdma;

namespace {

SpreadingInstance identical_pair_instance() {
  SpreadingInstance inst;
  inst.k_users = 2;
  inst.n_chips = 4;
  inst.seed = 0;
  inst.chips = {1, -1, 1, 1, 1, -1, 1, 1};
  inst.gram = {4, 4, 4, 4};
  return inst;
}

}  // namespace

TEST_CASE("codebook enumeration matches the counting oracle and is sorted") {
  const auto inst = gen_spreading(10, 10, 8128);
  const auto book = build_codebook(inst, 10);
  CHECK(book.size() == count_codewords(inst, 10));
  for (const auto& word : book) {
    CHECK(is_po_codeword(inst, word, 10));
  }
  // Lexicographic order, -1 before +1.
  CHECK(std::is_sorted(book.begin(), book.end()));
}

TEST_CASE("identical-signature pair yields exactly the agreeing codebook") {
  const auto book = build_codebook(identical_pair_instance(), 2);
  REQUIRE(book.size() == 2);
  CHECK(book[0] == std::vector<std::int8_t>{-1, -1});
  CHECK(book[1] == std::vector<std::int8_t>{1, 1});
}

TEST_CASE("codebook guard and validation") {
  const auto big = gen_spreading(21, 4, 3);
  CHECK_THROWS_AS(build_codebook(big, 1), capacity_error);
  const auto inst = gen_spreading(4, 4, 3);
  CHECK_THROWS_AS(build_codebook(inst, 0), std::domain_error);
}

TEST_CASE("no noise, no constrained errors, on any instance") {
  for (int r = 0; r < 10; ++r) {
    LinkConfig cfg;
    cfg.instance = gen_spreading(12, 12, instance_seed(160, r));
    cfg.k_prime = 12;
    cfg.noise_sigma = 0.0;
    cfg.frames = 200;
    cfg.seed = 1000 + r;
    const auto ber = transmit_detect(cfg);
    CHECK(ber.constrained_errors == 0);
    CHECK(ber.ber_constrained == 0.0);
    CHECK(ber.constrained_bits == 200ull * 12);
    CHECK(ber.unconstrained_bits == 0);
  }
}

TEST_CASE("transmit_detect is deterministic in (config, seed)") {
  LinkConfig cfg;
  cfg.instance = gen_spreading(8, 8, 4711);
  cfg.k_prime = 4;
  cfg.noise_sigma = 0.3;
  cfg.frames = 2000;
  cfg.seed = 99;
  const auto a = transmit_detect(cfg);
  const auto b = transmit_detect(cfg);
  CHECK(a.constrained_errors == b.constrained_errors);
  CHECK(a.unconstrained_errors == b.unconstrained_errors);
  CHECK(a.per_user_errors == b.per_user_errors);
  cfg.seed = 100;
  const auto c = transmit_detect(cfg);
  CHECK((a.constrained_errors != c.constrained_errors ||
         a.unconstrained_errors != c.unconstrained_errors));
}

TEST_CASE("overwhelming noise drives both groups to coin flips") {
  LinkConfig cfg;
  cfg.instance = gen_spreading(8, 8, 31);
  cfg.k_prime = 4;
  cfg.noise_sigma = 1e3;
  cfg.frames = 5000;
  cfg.seed = 7;
  const auto ber = transmit_detect(cfg);
  const double se =
      0.5 / std::sqrt(static_cast<double>(cfg.frames) * cfg.k_prime);
  CHECK(std::fabs(ber.ber_constrained - 0.5) < 3 * se);
  CHECK(std::fabs(ber.ber_unconstrained - 0.5) < 3 * se);
}

TEST_CASE("ber is exactly errors over bits") {
  LinkConfig cfg;
  cfg.instance = gen_spreading(6, 6, 12);
  cfg.k_prime = 3;
  cfg.noise_sigma = 0.5;
  cfg.frames = 500;
  cfg.seed = 3;
  const auto ber = transmit_detect(cfg);
  CHECK(ber.ber_constrained ==
        static_cast<double>(ber.constrained_errors) / ber.constrained_bits);
  CHECK(ber.ber_unconstrained ==
        static_cast<double>(ber.unconstrained_errors) / ber.unconstrained_bits);
  std::uint64_t per_user_total = 0;
  for (const auto e : ber.per_user_errors) per_user_total += e;
  CHECK(per_user_total == ber.constrained_errors + ber.unconstrained_errors);
}

TEST_CASE("ber decreases with SNR under codebook signaling") {
  LinkConfig cfg;
  cfg.instance = gen_spreading(12, 24, 2001);
  cfg.k_prime = 12;
  cfg.frames = 20000;
  cfg.seed = 5;
  double prev = 1.0;
  for (const double sigma : {0.5, 0.3, 0.15}) {
    cfg.noise_sigma = sigma;
    const auto ber = transmit_detect(cfg);
    CHECK(ber.ber_constrained <= prev);
    prev = ber.ber_constrained;
  }
}

TEST_CASE("codebook transmission has no floor; random signaling does") {
  // Same instance, same noise level: the codebook keeps every constrained
  // margin positive while uniform random words violate some of them at any
  // SNR.
  LinkConfig cfg;
  cfg.instance = gen_spreading(12, 12, 424242);
  cfg.k_prime = 12;
  cfg.noise_sigma = 0.02;
  cfg.frames = 20000;
  cfg.seed = 77;
  const auto with_codebook = transmit_detect(cfg);
  CHECK(with_codebook.ber_constrained < 1e-3);

  cfg.signaling = Signaling::uniform_random;
  const auto random_words = transmit_detect(cfg);
  CHECK(random_words.ber_constrained > 1e-2);
  double max_user_ber = 0.0;
  for (const auto e : random_words.per_user_errors) {
    max_user_ber = std::max(
        max_user_ber, static_cast<double>(e) / cfg.frames);
  }
  CHECK(max_user_ber > 1e-2);
}

TEST_CASE("transmit_detect validation") {
  LinkConfig cfg;
  cfg.instance = gen_spreading(4, 4, 1);
  cfg.k_prime = 5;
  CHECK_THROWS_AS(transmit_detect(cfg), std::domain_error);
  cfg.k_prime = 2;
  cfg.frames = 0;
  CHECK_THROWS_AS(transmit_detect(cfg), std::domain_error);
  cfg.frames = 1;
  cfg.noise_sigma = -0.1;
  CHECK_THROWS_AS(transmit_detect(cfg), std::domain_error);
}
