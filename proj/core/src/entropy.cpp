#include "pocdma/entropy.hpp"

#include <cmath>
#include <numbers>

#include "pocdma/gaussian_tail.hpp"

namespace pocdma {

namespace {

double exponent_bracket(double a, double b) {
  return b - 0.5 + (1.0 - b) * (1.0 - b) / (2.0 * a) + 0.5 * std::log(a);
}

}  // namespace

EntropyResult entropy(const SystemPoint& point, const SaddleSolution& solution) {
  point.validate();
  if (!solution.converged) {
    throw std::invalid_argument(
        "entropy: saddle solution is not converged (" + solution.diagnostic + ")");
  }
  EntropyResult out;
  out.system = point;
  out.saddle = solution;
  out.h_nats = exponent_bracket(solution.a_star, solution.b_star) / point.beta +
               point.gamma * log_2q(solution.t_star) +
               (1.0 - point.gamma) * std::numbers::ln2;
  out.h_bits = out.h_nats * std::numbers::log2e;
  return out;
}

EntropyResult solve_entropy(const SystemPoint& point) {
  point.validate();
  SaddleSolution sol = solve_saddle(point);
  if (!sol.converged) {
    throw solver_error("saddle solve failed at beta=" + std::to_string(point.beta) +
                       " gamma=" + std::to_string(point.gamma) + ": " +
                       sol.diagnostic);
  }
  return entropy(point, sol);
}

double ame(const SystemPoint& point) {
  return point.gamma * solve_entropy(point).h_bits;
}

double ame_direct(const SystemPoint& point, const SaddleSolution& solution) {
  point.validate();
  if (!solution.converged) {
    throw std::invalid_argument("ame_direct: saddle solution is not converged");
  }
  const double gamma = point.gamma;
  const double log2_2q = log_2q(solution.t_star) * std::numbers::log2e;
  return gamma * std::numbers::log2e / point.beta *
             exponent_bracket(solution.a_star, solution.b_star) +
         gamma * gamma * log2_2q + gamma * (1.0 - gamma);
}

}  // namespace pocdma
