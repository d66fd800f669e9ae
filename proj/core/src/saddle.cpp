#include "pocdma/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pocdma/gaussian_tail.hpp"

namespace pocdma {

void SystemPoint::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::domain_error("SystemPoint: beta must be positive and finite, got " +
                            std::to_string(beta));
  }
  if (!(gamma > 0.0) || !(gamma <= 1.0)) {
    throw std::domain_error("SystemPoint: gamma must lie in (0, 1], got " +
                            std::to_string(gamma));
  }
}

SaddleResiduals saddle_residuals(const SystemPoint& point, double a, double b) {
  if (!(point.beta > 0.0) || !std::isfinite(point.beta)) {
    throw std::domain_error("saddle_residuals: beta must be positive");
  }
  if (!(point.gamma >= 0.0) || !(point.gamma <= 1.0)) {
    throw std::domain_error("saddle_residuals: gamma must lie in [0, 1]");
  }
  if (!(a > 0.0)) {
    throw std::domain_error("saddle_residuals: a must be positive, got " +
                            std::to_string(a));
  }
  const double beta = point.beta;
  const double gamma = point.gamma;
  const double sqrt_ab = std::sqrt(a * beta);
  const double t = (b - 1.0) / sqrt_ab;
  const double one_b = 1.0 - b;
  const double ratio = hazard_ratio(t);
  SaddleResiduals r;
  r.t = t;
  r.r_a = (one_b * one_b / a - 1.0) / beta + gamma * t * ratio;
  r.r_b = (1.0 - one_b / a) / beta + gamma * ratio / sqrt_ab;
  return r;
}

namespace {

struct Eval {
  double r_a, r_b;   // residuals
  double t, ratio, dratio;
  double a;
  double merit() const { return r_a * r_a + r_b * r_b; }
  double inf_norm() const { return std::max(std::fabs(r_a), std::fabs(r_b)); }
  bool finite() const { return std::isfinite(r_a) && std::isfinite(r_b); }
};

// Same expressions as saddle_residuals, parameterized by u = log a so the
// solver can never step out of a > 0.
Eval eval_at(double beta, double gamma, double u, double b) {
  Eval e;
  e.a = std::exp(u);
  const double sqrt_ab = std::sqrt(e.a * beta);
  e.t = (b - 1.0) / sqrt_ab;
  e.ratio = hazard_ratio(e.t);
  e.dratio = hazard_ratio_deriv(e.t);
  const double one_b = 1.0 - b;
  e.r_a = (one_b * one_b / e.a - 1.0) / beta + gamma * e.t * e.ratio;
  e.r_b = (1.0 - one_b / e.a) / beta + gamma * e.ratio / sqrt_ab;
  return e;
}

struct Jacobian {
  double j11, j12, j21, j22;  // d(r_a, r_b)/d(u, b)
};

Jacobian jacobian_at(double beta, double gamma, double b, const Eval& e) {
  const double a = e.a;
  const double one_b = 1.0 - b;
  const double sqrt_ab = std::sqrt(a * beta);
  const double dt_du = -0.5 * e.t;
  const double dt_db = 1.0 / sqrt_ab;
  const double dtr = e.ratio + e.t * e.dratio;  // d(t*ratio)/dt
  Jacobian j;
  j.j11 = -one_b * one_b / (a * beta) + gamma * dtr * dt_du;
  j.j12 = -2.0 * one_b / (a * beta) + gamma * dtr * dt_db;
  j.j21 = one_b / (a * beta) - 0.5 * gamma * dtr / sqrt_ab;
  j.j22 = 1.0 / (a * beta) + gamma * e.dratio / (a * beta);
  return j;
}

constexpr double kMaxLogA = 700.0;  // keep exp(u) inside the double range

double clamp_u(double u) { return std::clamp(u, -kMaxLogA, kMaxLogA); }

}  // namespace

SaddleSolution solve_saddle(const SystemPoint& point,
                            std::optional<std::pair<double, double>> init,
                            double tol, int max_iter) {
  point.validate();
  if (!(tol > 0.0)) throw std::domain_error("solve_saddle: tol must be positive");
  if (max_iter < 1) throw std::domain_error("solve_saddle: max_iter must be >= 1");

  double u = 0.0;  // a = 1, the exact gamma = 0 fixed point
  double b = 0.0;
  if (init) {
    if (!(init->first > 0.0)) {
      throw std::domain_error("solve_saddle: initial a must be positive");
    }
    u = clamp_u(std::log(init->first));
    b = init->second;
  }

  const double beta = point.beta;
  const double gamma = point.gamma;

  SaddleSolution sol;
  Eval e = eval_at(beta, gamma, u, b);
  int iter = 0;
  std::string stall;

  while (e.inf_norm() >= tol && iter < max_iter) {
    ++iter;
    const Jacobian j = jacobian_at(beta, gamma, b, e);
    const double det = j.j11 * j.j22 - j.j12 * j.j21;
    double du = 0.0, db = 0.0;
    bool have_newton = std::isfinite(det) && std::fabs(det) > 1e-300;
    if (have_newton) {
      du = (-e.r_a * j.j22 + e.r_b * j.j12) / det;
      db = (e.r_a * j.j21 - e.r_b * j.j11) / det;
      if (!std::isfinite(du) || !std::isfinite(db)) have_newton = false;
    }

    bool stepped = false;
    if (have_newton) {
      const double m0 = e.merit();
      for (double lambda = 1.0; lambda > 1e-13; lambda *= 0.5) {
        const double u2 = clamp_u(u + lambda * du);
        const double b2 = b + lambda * db;
        const Eval e2 = eval_at(beta, gamma, u2, b2);
        if (e2.finite() && e2.merit() <= m0 * (1.0 - 1e-4 * lambda)) {
          u = u2;
          b = b2;
          e = e2;
          stepped = true;
          break;
        }
      }
    }

    if (!stepped) {
      // Descent on the residual norm; covers singular or useless Jacobians.
      const double gu = 2.0 * (j.j11 * e.r_a + j.j21 * e.r_b);
      const double gb = 2.0 * (j.j12 * e.r_a + j.j22 * e.r_b);
      const double gnorm = std::hypot(gu, gb);
      if (!(gnorm > 0.0) || !std::isfinite(gnorm)) {
        stall = have_newton ? "line search stalled at a non-root stationary point"
                            : "singular Jacobian at a gradient stationary point";
        break;
      }
      const double m0 = e.merit();
      for (double lambda = 1.0 / gnorm; lambda > 1e-16 / gnorm; lambda *= 0.5) {
        const double u2 = clamp_u(u - lambda * gu);
        const double b2 = b - lambda * gb;
        const Eval e2 = eval_at(beta, gamma, u2, b2);
        if (e2.finite() && e2.merit() < m0) {
          u = u2;
          b = b2;
          e = e2;
          stepped = true;
          break;
        }
      }
      if (!stepped) {
        stall = have_newton ? "line search stalled (Newton and gradient)"
                            : "singular Jacobian; gradient step made no progress";
        break;
      }
    }
  }

  sol.a_star = std::exp(u);
  sol.b_star = b;
  sol.iterations = iter;
  const SaddleResiduals res = saddle_residuals(point, sol.a_star, sol.b_star);
  sol.t_star = res.t;
  sol.residual_inf_norm = std::max(std::fabs(res.r_a), std::fabs(res.r_b));
  sol.converged = sol.residual_inf_norm < tol;
  if (!sol.converged) {
    sol.diagnostic = !stall.empty()
                         ? stall
                         : "no convergence after " + std::to_string(iter) +
                               " iterations (residual " +
                               std::to_string(sol.residual_inf_norm) + ")";
  }
  return sol;
}

SaddleConsistency probe_saddle_consistency(const SystemPoint& point, double tol) {
  static const std::pair<double, double> starts[] = {
      {1.0, 0.0}, {5.0, 0.5}, {0.2, -2.0}};
  SaddleConsistency out;
  for (const auto& s : starts) {
    out.solutions.push_back(solve_saddle(point, s, tol));
  }
  out.consistent = true;
  for (const auto& sol : out.solutions) {
    if (!sol.converged) {
      out.consistent = false;
      return out;
    }
  }
  for (std::size_t i = 1; i < out.solutions.size(); ++i) {
    if (std::fabs(out.solutions[i].a_star - out.solutions[0].a_star) > 1e-8 ||
        std::fabs(out.solutions[i].b_star - out.solutions[0].b_star) > 1e-8) {
      out.consistent = false;
    }
  }
  return out;
}

}  // namespace pocdma
