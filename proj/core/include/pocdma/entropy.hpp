#pragma once

#include <stdexcept>

#include "pocdma/saddle.hpp"

namespace pocdma {

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EntropyResult {
  double h_nats = 0.0;
  double h_bits = 0.0;
  SystemPoint system;
  SaddleSolution saddle;
};

// Per-user signaling entropy H(beta, gamma) evaluated at a converged saddle
// point:
//   H = (1/beta)(b - 1/2 + (1-b)^2/(2a) + (log a)/2)
//       + gamma log(2 Q(t)) + (1-gamma) log 2          [nats]
// Throws std::invalid_argument if the solution is not converged.
EntropyResult entropy(const SystemPoint& point, const SaddleSolution& solution);

// Solve + entropy in one call. Throws solver_error on non-convergence.
EntropyResult solve_entropy(const SystemPoint& point);

// Asymptotic multiuser efficiency eta(beta, gamma) = gamma * h_bits.
// Throws solver_error if the saddle solve fails.
double ame(const SystemPoint& point);

// The same efficiency assembled directly in bit units,
//   gamma log2(e)/beta (b - 1/2 + (1-b)^2/(2a) + (log a)/2)
//   + gamma^2 log2(2 Q(t)) + gamma (1 - gamma),
// kept as an independently coded route for identity checks against
// gamma * h_bits.
double ame_direct(const SystemPoint& point, const SaddleSolution& solution);

}  // namespace pocdma
