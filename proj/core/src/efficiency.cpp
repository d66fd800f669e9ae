#include "pocdma/efficiency.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pocdma {

ComparisonAme comparison_ame(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::domain_error("comparison_ame: beta must be positive");
  }
  ComparisonAme c;
  c.eta_decorrelator = std::max(0.0, 1.0 - beta);
  c.eta_lmmse = c.eta_decorrelator;  // sigma -> 0 limit coincides
  c.eta_optimal_mud = 1.0;
  return c;
}

namespace {

constexpr int kCoarseGridPoints = 100;  // gamma = 0.01, 0.02, ..., 1.00
constexpr double kGammaFloor = 1e-6;
constexpr double kGammaRefineTol = 1e-5;

using WarmStart = std::optional<std::pair<double, double>>;

struct EtaEval {
  double eta;
  WarmStart landed;
};

std::optional<EtaEval> eval_eta(double beta, double gamma, WarmStart init) {
  const SystemPoint pt{beta, gamma};
  SaddleSolution sol = solve_saddle(pt, init);
  if (!sol.converged && init) sol = solve_saddle(pt);  // cold retry
  if (!sol.converged) return std::nullopt;
  const EntropyResult h = entropy(pt, sol);
  return EtaEval{gamma * h.h_bits, WarmStart({sol.a_star, sol.b_star})};
}

struct Candidate {
  double gamma = 0.0;
  double eta = -std::numeric_limits<double>::infinity();
};

// Larger eta wins; exact ties resolve toward larger gamma.
bool improves(const Candidate& next, const Candidate& cur) {
  return next.eta > cur.eta || (next.eta == cur.eta && next.gamma > cur.gamma);
}

template <typename F>
Candidate golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double invphi = 0.61803398874989484820;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  return (f2 >= f1) ? Candidate{x2, f2} : Candidate{x1, f1};
}

}  // namespace

GammaOptimum optimize_gamma(double beta, GammaScanCache* cache) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::domain_error("optimize_gamma: beta must be positive");
  }
  if (cache && cache->warm.size() != kCoarseGridPoints) {
    cache->warm.assign(kCoarseGridPoints, std::nullopt);
  }

  GammaOptimum out;
  Candidate best;
  WarmStart best_landing;
  WarmStart prev;  // continuation along the gamma axis at this beta
  for (int i = 0; i < kCoarseGridPoints; ++i) {
    const double gamma = (i + 1) * 0.01;
    WarmStart init = (cache && cache->warm[i]) ? cache->warm[i] : prev;
    const auto ev = eval_eta(beta, gamma, init);
    if (!ev) {
      out.skipped_gammas.push_back(gamma);
      if (cache) cache->warm[i] = std::nullopt;
      continue;
    }
    prev = ev->landed;
    if (cache) cache->warm[i] = ev->landed;
    if (improves({gamma, ev->eta}, best)) {
      best = {gamma, ev->eta};
      best_landing = ev->landed;
    }
  }
  if (!best_landing) {
    throw solver_error("optimize_gamma: saddle solve failed at every grid gamma (beta=" +
                       std::to_string(beta) + ")");
  }

  const double lo = std::max(kGammaFloor, best.gamma - 0.01);
  const double hi = std::min(1.0, best.gamma + 0.01);
  WarmStart warm = best_landing;
  auto eta_at = [&](double gamma) -> double {
    const auto ev = eval_eta(beta, gamma, warm);
    if (!ev) return -std::numeric_limits<double>::infinity();
    warm = ev->landed;
    return ev->eta;
  };
  const Candidate refined = golden_max(eta_at, lo, hi, kGammaRefineTol);

  Candidate winner = best;
  if (improves(refined, winner)) winner = refined;
  out.gamma_opt = winner.gamma;
  out.eta_opt = winner.eta;
  return out;
}

std::vector<AmeCurvePoint> sweep_beta(const std::vector<double>& betas,
                                      bool with_comparisons) {
  if (betas.empty()) throw std::invalid_argument("sweep_beta: empty beta grid");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i] > 0.0) || !std::isfinite(betas[i])) {
      throw std::invalid_argument("sweep_beta: betas must be positive and finite");
    }
    if (i > 0 && !(betas[i] >= betas[i - 1])) {
      throw std::invalid_argument("sweep_beta: betas must be sorted ascending");
    }
  }

  std::vector<AmeCurvePoint> rows;
  rows.reserve(betas.size());
  GammaScanCache cache;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const double beta : betas) {
    AmeCurvePoint row;
    row.beta = beta;
    if (with_comparisons) {
      const ComparisonAme c = comparison_ame(beta);
      row.eta_decorrelator = c.eta_decorrelator;
      row.eta_lmmse = c.eta_lmmse;
      row.eta_optimal_mud = c.eta_optimal_mud;
    } else {
      row.eta_decorrelator = row.eta_lmmse = row.eta_optimal_mud = nan;
    }
    try {
      const GammaOptimum opt = optimize_gamma(beta, &cache);
      row.gamma_opt = opt.gamma_opt;
      row.eta_opt = opt.eta_opt;
      row.ok = true;
      row.status = "ok";
    } catch (const std::exception& ex) {
      row.gamma_opt = nan;
      row.eta_opt = nan;
      row.ok = false;
      row.status = ex.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) {
    throw std::invalid_argument("log_grid: need 0 < lo <= hi and points >= 1");
  }
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < points; ++i) {
    g[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (!(hi >= lo) || points < 1) {
    throw std::invalid_argument("linear_grid: need lo <= hi and points >= 1");
  }
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < points; ++i) {
    g[i] = lo + (hi - lo) * i / (points - 1);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace pocdma
