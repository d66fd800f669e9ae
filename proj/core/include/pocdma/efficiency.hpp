#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pocdma/entropy.hpp"

namespace pocdma {

// Reference efficiencies drawn next to the optimized curve: the decorrelator
// and the zero-noise LMMSE limit share max(0, 1 - beta) under large-system
// random spreading, and the optimal multiuser detector sits at 1.
struct ComparisonAme {
  double eta_decorrelator = 0.0;
  double eta_lmmse = 0.0;
  double eta_optimal_mud = 1.0;
};
ComparisonAme comparison_ame(double beta);

struct GammaOptimum {
  double gamma_opt = 0.0;
  double eta_opt = 0.0;
  std::vector<double> skipped_gammas;  // grid points whose solve failed
};

// Warm starts carried from one beta to the next along a sweep: the saddle
// point (a, b) reached at each coarse-grid gamma.
struct GammaScanCache {
  std::vector<std::optional<std::pair<double, double>>> warm;
};

// max over gamma in (0, 1] of eta(beta, gamma): exhaustive coarse grid in
// steps of 0.01 followed by golden-section refinement to |dgamma| < 1e-5.
// Ties resolve toward larger gamma. Throws solver_error if every grid point
// fails. When a cache is supplied its entries seed the grid solves and are
// refreshed for the following beta.
GammaOptimum optimize_gamma(double beta, GammaScanCache* cache = nullptr);

struct AmeCurvePoint {
  double beta = 0.0;
  double gamma_opt = 0.0;
  double eta_opt = 0.0;
  double eta_decorrelator = 0.0;
  double eta_lmmse = 0.0;
  double eta_optimal_mud = 1.0;
  bool ok = false;
  std::string status;  // "ok" or the failure reason
};

// One curve point per beta, solved in ascending order with continuation
// warm starts. Per-point failures are recorded in the row and never abort
// the sweep. Requires betas nonempty, positive, sorted ascending.
std::vector<AmeCurvePoint> sweep_beta(const std::vector<double>& betas,
                                      bool with_comparisons = true);

// Inclusive grids used by the CLI and the test suites.
std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace pocdma
