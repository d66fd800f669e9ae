#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pocdma {

// One analysis instance: system load beta = K/N and the fraction
// gamma = K'/K of users whose bits the signaling set protects.
struct SystemPoint {
  double beta = 1.0;
  double gamma = 1.0;

  // Throws std::domain_error unless beta > 0 and 0 < gamma <= 1.
  void validate() const;
};

struct SaddleResiduals {
  double r_a = 0.0;
  double r_b = 0.0;
  double t = 0.0;
};

// Stationarity residuals of the entropy exponent, in the scaled form
//   r_a = (1/beta) ((1-b)^2/a - 1) + gamma t Q'(t)/Q(t)
//   r_b = (1/beta) (1 - (1-b)/a) + gamma (a beta)^{-1/2} Q'(t)/Q(t)
// with t = (b-1)/sqrt(a beta). Requires a > 0 and gamma in [0, 1]; gamma = 0
// is the analytic anchor where both residuals vanish at (a, b) = (1, 0).
SaddleResiduals saddle_residuals(const SystemPoint& point, double a, double b);

struct SaddleSolution {
  double a_star = 1.0;
  double b_star = 0.0;
  double t_star = 0.0;
  double residual_inf_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;  // non-empty when convergence failed
};

// Damped Newton on (log a, b) with backtracking line search and a residual
// gradient fallback; a > 0 is structural. Deterministic in all arguments.
// Non-convergence is reported through the returned flag, never as a wrong
// fixed point. Default start (1, 0) is the exact gamma = 0 solution.
SaddleSolution solve_saddle(const SystemPoint& point,
                            std::optional<std::pair<double, double>> init = std::nullopt,
                            double tol = 1e-11, int max_iter = 200);

// Re-solves the same point from several well-separated starts and reports
// whether they land on the same fixed point (within 1e-8 on a and b). The
// saddle system is not proven single-rooted, so disagreement is surfaced as
// a diagnostic instead of being asserted away.
struct SaddleConsistency {
  bool consistent = false;
  std::vector<SaddleSolution> solutions;
};
SaddleConsistency probe_saddle_consistency(const SystemPoint& point,
                                           double tol = 1e-11);

}  // namespace pocdma
