// pocdma — batch front end for the saddle-point efficiency solver, the
// exact codeword-counting oracle and the link simulator. Every run emits the
// resolved parameter set alongside the results so outputs are self-describing
// and byte-reproducible.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pocdma/counting.hpp"
#include "pocdma/efficiency.hpp"
#include "pocdma/entropy.hpp"
#include "pocdma/link.hpp"
#include "pocdma/rng.hpp"
#include "pocdma/saddle.hpp"
#include "pocdma/spreading.hpp"
#include "pocdma/version.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitCapacity = 3;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Table {
  std::string subcommand;
  std::vector<std::pair<std::string, ordered_json>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;

  void param(std::string key, ordered_json value) {
    params.emplace_back(std::move(key), std::move(value));
  }
};

std::string csv_cell(const ordered_json& v) {
  std::string s;
  if (v.is_number_float()) {
    s = fmt17(v.get<double>());
  } else if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_boolean()) {
    s = v.get<bool>() ? "true" : "false";
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (const char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }
  return s;
}

std::string to_csv(const Table& t) {
  std::string out;
  out += "# tool: pocdma " + std::string(pocdma::kVersion) + "\n";
  out += "# schema: " + std::to_string(pocdma::kOutputSchemaVersion) + "\n";
  out += "# subcommand: " + t.subcommand + "\n";
  for (const auto& [key, value] : t.params) {
    out += "# param " + key + " = " + csv_cell(value) + "\n";
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out += (i ? "," : "") + t.columns[i];
  }
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += csv_cell(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& t) {
  ordered_json j;
  j["tool"] = "pocdma";
  j["version"] = pocdma::kVersion;
  j["schema"] = pocdma::kOutputSchemaVersion;
  j["subcommand"] = t.subcommand;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : t.params) params[key] = value;
  j["params"] = params;
  j["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

void emit(const Table& t, const std::string& format, const std::string& path) {
  const std::string payload = format == "json" ? to_json(t) : to_csv(t);
  if (path == "-") {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << payload;
  if (!out) throw std::runtime_error("cannot write output file: " + path);
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("POCDMA_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string format = "csv";
  std::string output = "-";
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", opts->output,
                  "Output path ('-' for standard output)")
      ->capture_default_str();
  cmd->add_option("--threads", opts->threads,
                  "Worker threads (0: POCDMA_THREADS env or hardware)")
      ->capture_default_str();
}

int run_solve(double beta, double gamma, double tol, int max_iter,
              std::optional<double> a0, std::optional<double> b0,
              const CommonOpts& common) {
  const pocdma::SystemPoint pt{beta, gamma};
  std::optional<std::pair<double, double>> init;
  if (a0 && b0) init = {*a0, *b0};

  const pocdma::SaddleSolution sol = pocdma::solve_saddle(pt, init, tol, max_iter);
  const pocdma::SaddleResiduals res =
      pocdma::saddle_residuals(pt, sol.a_star, sol.b_star);

  const double nan = std::nan("");
  double h_nats = nan, h_bits = nan, eta = nan, eta_direct = nan;
  if (sol.converged) {
    const pocdma::EntropyResult h = pocdma::entropy(pt, sol);
    h_nats = h.h_nats;
    h_bits = h.h_bits;
    eta = gamma * h.h_bits;
    eta_direct = pocdma::ame_direct(pt, sol);
  }

  Table t;
  t.subcommand = "solve";
  t.param("beta", beta);
  t.param("gamma", gamma);
  t.param("tol", tol);
  t.param("max_iter", max_iter);
  if (init) {
    t.param("init_a", init->first);
    t.param("init_b", init->second);
  }
  t.columns = {"beta", "gamma", "a_star", "b_star", "t_star", "r_a", "r_b",
               "residual_inf_norm", "iterations", "converged", "h_nats",
               "h_bits", "eta", "eta_direct"};
  t.rows.push_back({beta, gamma, sol.a_star, sol.b_star, sol.t_star, res.r_a,
                    res.r_b, sol.residual_inf_norm, sol.iterations,
                    sol.converged, h_nats, h_bits, eta, eta_direct});
  emit(t, common.format, common.output);
  if (!sol.converged) {
    std::fprintf(stderr, "solve: no convergence: %s\n", sol.diagnostic.c_str());
    return kExitNoConvergence;
  }
  return kExitOk;
}

int run_optimize(double beta, const CommonOpts& common) {
  const pocdma::GammaOptimum opt = pocdma::optimize_gamma(beta);
  for (const double g : opt.skipped_gammas) {
    std::fprintf(stderr, "optimize: grid gamma=%.4f skipped (solver failure)\n", g);
  }
  const pocdma::ComparisonAme cmp = pocdma::comparison_ame(beta);

  Table t;
  t.subcommand = "optimize";
  t.param("beta", beta);
  t.columns = {"beta", "gamma_opt", "eta_opt", "eta_decorrelator", "eta_lmmse",
               "eta_optimal_mud"};
  t.rows.push_back({beta, opt.gamma_opt, opt.eta_opt, cmp.eta_decorrelator,
                    cmp.eta_lmmse, cmp.eta_optimal_mud});
  emit(t, common.format, common.output);
  return kExitOk;
}

int run_sweep(double beta_min, double beta_max, int points, bool log_spacing,
              const CommonOpts& common) {
  const std::vector<double> betas =
      log_spacing ? pocdma::log_grid(beta_min, beta_max, points)
                  : pocdma::linear_grid(beta_min, beta_max, points);
  const std::vector<pocdma::AmeCurvePoint> rows = pocdma::sweep_beta(betas, true);

  Table t;
  t.subcommand = "sweep";
  t.param("beta_min", beta_min);
  t.param("beta_max", beta_max);
  t.param("points", points);
  t.param("log", log_spacing);
  t.columns = {"beta", "gamma_opt", "eta_opt", "eta_decorrelator", "eta_lmmse",
               "eta_optimal_mud", "status"};
  bool any_ok = false;
  for (const auto& r : rows) {
    any_ok = any_ok || r.ok;
    t.rows.push_back({r.beta, r.gamma_opt, r.eta_opt, r.eta_decorrelator,
                      r.eta_lmmse, r.eta_optimal_mud, r.status});
  }
  emit(t, common.format, common.output);
  return any_ok ? kExitOk : kExitNoConvergence;
}

int resolve_k_prime(int k, std::optional<int> k_prime, std::optional<double> gamma) {
  if (k_prime && gamma) {
    throw CLI::ValidationError("--k-prime and --gamma are mutually exclusive");
  }
  if (k_prime) return *k_prime;
  if (gamma) return pocdma::k_prime_for_gamma(*gamma, k);
  return k;  // default: all users constrained
}

int run_mc_count(int k, int n, std::optional<int> k_prime_opt,
                 std::optional<double> gamma_opt, int instances,
                 std::uint64_t seed, const std::string& fixture_out,
                 const CommonOpts& common) {
  const int k_prime = resolve_k_prime(k, k_prime_opt, gamma_opt);
  const int threads = resolve_threads(common.threads);
  const pocdma::CodewordCountStats stats =
      pocdma::empirical_entropy(k, n, k_prime, instances, seed, threads);

  Table t;
  t.subcommand = "mc-count";
  t.param("k", k);
  t.param("n", n);
  t.param("k_prime", k_prime);
  t.param("instances", instances);
  t.param("seed", seed);
  t.param("threads", threads);
  t.columns = {"instance", "seed", "k", "n", "k_prime", "count"};
  std::vector<pocdma::GoldenCountRecord> records;
  for (int i = 0; i < static_cast<int>(stats.counts.size()); ++i) {
    const std::uint64_t inst_seed = pocdma::instance_seed(seed, i);
    t.rows.push_back({i, inst_seed, k, n, k_prime, stats.counts[i]});
    records.push_back({inst_seed, k, n, k_prime, stats.counts[i]});
  }
  emit(t, common.format, common.output);
  if (!fixture_out.empty()) {
    std::ofstream fixture(fixture_out, std::ios::binary);
    pocdma::write_golden_counts(fixture, records);
    if (!fixture) {
      throw std::runtime_error("cannot write fixture file: " + fixture_out);
    }
  }
  return kExitOk;
}

int run_mc_entropy(int k, int n, std::optional<int> k_prime_opt,
                   std::optional<double> gamma_opt, int instances,
                   std::uint64_t seed, const CommonOpts& common) {
  const int k_prime = resolve_k_prime(k, k_prime_opt, gamma_opt);
  const int threads = resolve_threads(common.threads);
  const pocdma::CodewordCountStats stats =
      pocdma::empirical_entropy(k, n, k_prime, instances, seed, threads);
  if (stats.anomalies > 0) {
    std::fprintf(stderr, "mc-entropy: %d zero-count instance(s) excluded\n",
                 stats.anomalies);
  }

  const double beta = static_cast<double>(k) / n;
  const double gamma = static_cast<double>(k_prime) / k;
  const double h_analytic = pocdma::solve_entropy({beta, gamma}).h_bits;

  Table t;
  t.subcommand = "mc-entropy";
  t.param("k", k);
  t.param("n", n);
  t.param("k_prime", k_prime);
  t.param("instances", instances);
  t.param("seed", seed);
  t.param("threads", threads);
  t.columns = {"k", "n", "k_prime", "instances", "anomalies", "h_emp_bits",
               "h_emp_stderr", "cv_log2_count", "h_analytic_bits", "abs_gap"};
  t.rows.push_back({k, n, k_prime, stats.instances, stats.anomalies,
                    stats.h_emp_bits, stats.h_emp_stderr, stats.cv_log2_count,
                    h_analytic, std::fabs(stats.h_emp_bits - h_analytic)});
  emit(t, common.format, common.output);
  return kExitOk;
}

int run_link_ber(int k, int n, std::optional<int> k_prime_opt,
                 std::optional<double> gamma_opt, std::uint64_t seed,
                 std::uint64_t frames, std::vector<double> sigmas,
                 std::optional<double> sigma_min, std::optional<double> sigma_max,
                 int sigma_points, bool log_sigma, bool random_signaling,
                 const CommonOpts& common) {
  const int k_prime = resolve_k_prime(k, k_prime_opt, gamma_opt);
  if (sigmas.empty()) {
    if (sigma_min && sigma_max) {
      sigmas = log_sigma
                   ? pocdma::log_grid(*sigma_min, *sigma_max, sigma_points)
                   : pocdma::linear_grid(*sigma_min, *sigma_max, sigma_points);
    } else {
      throw CLI::ValidationError(
          "link-ber needs --sigma values or --sigma-min/--sigma-max");
    }
  }

  pocdma::LinkConfig cfg;
  cfg.instance = pocdma::gen_spreading(k, n, seed);
  cfg.k_prime = k_prime;
  cfg.frames = frames;
  cfg.seed = seed;
  cfg.signaling = random_signaling ? pocdma::Signaling::uniform_random
                                   : pocdma::Signaling::codebook;

  Table t;
  t.subcommand = "link-ber";
  t.param("k", k);
  t.param("n", n);
  t.param("k_prime", k_prime);
  t.param("frames", frames);
  t.param("seed", seed);
  t.param("signaling", random_signaling ? "uniform_random" : "codebook");
  t.columns = {"sigma", "snr_db", "ber_constrained", "ber_unconstrained",
               "frames"};
  for (const double sigma : sigmas) {
    cfg.noise_sigma = sigma;
    const pocdma::BerStats ber = pocdma::transmit_detect(cfg);
    const double snr_db = -20.0 * std::log10(sigma);
    t.rows.push_back({sigma, snr_db, ber.ber_constrained, ber.ber_unconstrained,
                      frames});
  }
  emit(t, common.format, common.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-orthogonal random CDMA efficiency toolkit"};
  app.set_version_flag("--version", std::string("pocdma ") + pocdma::kVersion);
  app.require_subcommand(1);

  // solve ------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve",
      "Solve the saddle-point system at one (beta, gamma) and report H and eta");
  double beta = 1.0, gamma = 1.0, tol = 1e-11;
  int max_iter = 200;
  std::optional<double> init_a, init_b;
  CommonOpts solve_common;
  solve->add_option("--beta", beta, "System load K/N")->required();
  solve->add_option("--gamma", gamma, "Active-user fraction K'/K")->required();
  solve->add_option("--tol", tol, "Residual infinity-norm tolerance")
      ->capture_default_str();
  solve->add_option("--max-iter", max_iter, "Newton iteration cap")
      ->capture_default_str();
  solve->add_option("--init-a", init_a, "Initial a (with --init-b)");
  solve->add_option("--init-b", init_b, "Initial b (with --init-a)");
  add_common(solve, &solve_common);

  // optimize ---------------------------------------------------------------
  auto* optimize = app.add_subcommand("optimize",
      "Maximize eta over gamma at one beta");
  double opt_beta = 1.0;
  CommonOpts opt_common;
  optimize->add_option("--beta", opt_beta, "System load K/N")->required();
  add_common(optimize, &opt_common);

  // sweep ------------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep",
      "Optimized-efficiency curve over a beta grid, with comparison detectors");
  double beta_min = 0.01, beta_max = 10.0;
  int points = 50;
  bool log_spacing = false;
  CommonOpts sweep_common;
  sweep->add_option("--beta-min", beta_min, "Grid start")->required();
  sweep->add_option("--beta-max", beta_max, "Grid end")->required();
  sweep->add_option("--points", points, "Grid size")->capture_default_str();
  sweep->add_flag("--log", log_spacing, "Logarithmic spacing");
  add_common(sweep, &sweep_common);

  // mc-count ---------------------------------------------------------------
  auto* mc_count = app.add_subcommand("mc-count",
      "Exact admissible-codeword counts on random instances");
  int mc_k = 12, mc_n = 12, mc_instances = 1;
  std::optional<int> mc_k_prime;
  std::optional<double> mc_gamma;
  std::uint64_t mc_seed = 0;
  std::string fixture_out;
  CommonOpts mc_common;
  mc_count->add_option("--k", mc_k, "Users K (enumeration guard K<=30)")->required();
  mc_count->add_option("--n", mc_n, "Chips N")->required();
  mc_count->add_option("--k-prime", mc_k_prime, "Constrained users K'");
  mc_count->add_option("--gamma", mc_gamma, "Constrained fraction (K'=round(gamma K))");
  mc_count->add_option("--instances", mc_instances, "Instances")->capture_default_str();
  mc_count->add_option("--seed", mc_seed, "Master seed")->capture_default_str();
  mc_count->add_option("--fixture-out", fixture_out,
                       "Also write seed,K,N,k_prime,count fixture lines here");
  add_common(mc_count, &mc_common);

  // mc-entropy -------------------------------------------------------------
  auto* mc_entropy = app.add_subcommand("mc-entropy",
      "Empirical entropy across instances next to the asymptotic value");
  int me_k = 12, me_n = 12, me_instances = 100;
  std::optional<int> me_k_prime;
  std::optional<double> me_gamma;
  std::uint64_t me_seed = 0;
  CommonOpts me_common;
  mc_entropy->add_option("--k", me_k, "Users K (enumeration guard K<=30)")->required();
  mc_entropy->add_option("--n", me_n, "Chips N")->required();
  mc_entropy->add_option("--k-prime", me_k_prime, "Constrained users K'");
  mc_entropy->add_option("--gamma", me_gamma, "Constrained fraction (K'=round(gamma K))");
  mc_entropy->add_option("--instances", me_instances, "Instances")->capture_default_str();
  mc_entropy->add_option("--seed", me_seed, "Master seed")->capture_default_str();
  add_common(mc_entropy, &me_common);

  // link-ber ---------------------------------------------------------------
  auto* link = app.add_subcommand("link-ber",
      "Matched-filter BER of codebook transmission over AWGN");
  int lk_k = 12, lk_n = 12, lk_sigma_points = 10;
  std::optional<int> lk_k_prime;
  std::optional<double> lk_gamma;
  std::uint64_t lk_seed = 0, lk_frames = 10000;
  std::vector<double> lk_sigmas;
  std::optional<double> lk_sigma_min, lk_sigma_max;
  bool lk_log_sigma = false, lk_random_signaling = false;
  CommonOpts lk_common;
  link->add_option("--k", lk_k, "Users K (codebook guard K<=20)")->required();
  link->add_option("--n", lk_n, "Chips N")->required();
  link->add_option("--k-prime", lk_k_prime, "Constrained users K'");
  link->add_option("--gamma", lk_gamma, "Constrained fraction (K'=round(gamma K))");
  link->add_option("--seed", lk_seed, "Instance/noise seed")->capture_default_str();
  link->add_option("--frames", lk_frames, "Frames per sigma")->capture_default_str();
  link->add_option("--sigma", lk_sigmas, "Per-chip noise deviation (repeatable)");
  link->add_option("--sigma-min", lk_sigma_min, "Sigma grid start");
  link->add_option("--sigma-max", lk_sigma_max, "Sigma grid end");
  link->add_option("--sigma-points", lk_sigma_points, "Sigma grid size")
      ->capture_default_str();
  link->add_flag("--log-sigma", lk_log_sigma, "Logarithmic sigma grid");
  link->add_flag("--random-signaling", lk_random_signaling,
                 "Uniform random words instead of the codebook (floor control)");
  add_common(link, &lk_common);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) {
      return run_solve(beta, gamma, tol, max_iter, init_a, init_b, solve_common);
    }
    if (optimize->parsed()) return run_optimize(opt_beta, opt_common);
    if (sweep->parsed()) {
      return run_sweep(beta_min, beta_max, points, log_spacing, sweep_common);
    }
    if (mc_count->parsed()) {
      return run_mc_count(mc_k, mc_n, mc_k_prime, mc_gamma, mc_instances,
                          mc_seed, fixture_out, mc_common);
    }
    if (mc_entropy->parsed()) {
      return run_mc_entropy(me_k, me_n, me_k_prime, me_gamma, me_instances,
                            me_seed, me_common);
    }
    if (link->parsed()) {
      return run_link_ber(lk_k, lk_n, lk_k_prime, lk_gamma, lk_seed, lk_frames,
                          lk_sigmas, lk_sigma_min, lk_sigma_max,
                          lk_sigma_points, lk_log_sigma, lk_random_signaling,
                          lk_common);
    }
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const pocdma::capacity_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCapacity;
  } catch (const pocdma::solver_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
