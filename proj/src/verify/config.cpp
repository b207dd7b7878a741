#include "quatvisc/verify/config.hpp"

#include <CLI11.hpp>

#include <map>

namespace quatvisc::verify {

void add_run_options(CLI::App& app, RunConfig& c) {
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--tolerance", c.tolerance, "Eigenvalue / root agreement")->capture_default_str();
  const std::map<std::string, LambdaPolicy> policies{{"paper", LambdaPolicy::paper},
                                                     {"empirical", LambdaPolicy::empirical}};
  app.add_option("--lambda-policy,--lambda_policy", c.lambda_policy, "Cone aperture: paper | empirical")
      ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case));
  app.add_option("--out", c.out, "Output directory")->capture_default_str();
  app.add_option("--count", c.count, "Override every sample count of the suite");

  app.add_option("--directions", c.directions)->capture_default_str();
  app.add_option("--delta-samples,--delta_samples", c.delta_samples)->capture_default_str();
  app.add_option("--cor4-pairs,--cor4_pairs", c.cor4_pairs)->capture_default_str();
  app.add_option("--lemma-grid,--lemma_grid", c.lemma_grid)->capture_default_str();
  app.add_option("--bound-slack,--bound_slack", c.bound_slack)->capture_default_str();

  app.add_option("--pairs", c.pairs)->capture_default_str();
  app.add_option("--fd-points,--fd_points", c.fd_points)->capture_default_str();
  app.add_option("--third-samples,--third_samples", c.third_samples)->capture_default_str();
  app.add_option("--fd-tolerance,--fd_tolerance", c.fd_tolerance)->capture_default_str();

  app.add_option("--m-hat-pairs,--m_hat_pairs", c.m_hat_pairs)->capture_default_str();
  app.add_option("--sigma-count,--sigma_count", c.sigma_count)->capture_default_str();
  app.add_option("--cone-count,--cone_count", c.cone_count)->capture_default_str();
  app.add_option("--heldout", c.heldout)->capture_default_str();
  app.add_option("--heldout-seed,--heldout_seed", c.heldout_seed, "Seed of the held-out points (default seed + 1)");
  app.add_option("--support-samples,--support_samples", c.support_samples)->capture_default_str();
  app.add_option("--ellipticity-trials,--ellipticity_trials", c.ellipticity_trials)->capture_default_str();
  app.add_option("--ellipticity-sigma,--ellipticity_sigma", c.ellipticity_sigma)->capture_default_str();
  app.add_option("--graph-tolerance,--graph_tolerance", c.graph_tolerance)->capture_default_str();
  app.add_flag("--rebuild", c.rebuild, "Ignore an existing sigma cache");

  app.add_option("--viscosity-trials,--viscosity_trials", c.viscosity_trials)->capture_default_str();
  app.add_option("--verify-samples,--verify_samples", c.verify_samples)->capture_default_str();
  app.add_option("--viscosity-tolerance,--viscosity_tolerance", c.viscosity_tolerance)->capture_default_str();
}

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be > 0");
}

void require_min(std::size_t v, std::size_t lo, const char* name) {
  if (v < lo) throw ConfigError(std::string(name) + " must be >= " + std::to_string(lo));
}

}  // namespace

void finalize(RunConfig& c, const std::string& suite) {
  if (c.count) {
    const std::size_t n = *c.count;
    if (suite == "verify-spectral") {
      c.directions = c.delta_samples = c.cor4_pairs = c.lemma_grid = n;
    } else if (suite == "verify-hessian") {
      c.pairs = c.fd_points = c.third_samples = n;
    } else if (suite == "build-operator") {
      c.m_hat_pairs = c.support_samples = c.ellipticity_trials = c.heldout = n;
      c.sigma_count = std::max<std::size_t>(n, 8);
      c.cone_count = c.ellipticity_sigma = std::max<std::size_t>(n, 2);
    } else if (suite == "viscosity-test") {
      c.viscosity_trials = n;
      c.verify_samples = std::max<std::size_t>(n, 100);
    }
  }
  require_positive(c.tolerance, "tolerance");
  require_positive(c.bound_slack, "bound_slack");
  require_positive(c.fd_tolerance, "fd_tolerance");
  require_positive(c.graph_tolerance, "graph_tolerance");
  require_positive(c.viscosity_tolerance, "viscosity_tolerance");
  require_min(c.directions, 1, "directions");
  require_min(c.delta_samples, 1, "delta_samples");
  require_min(c.cor4_pairs, 1, "cor4_pairs");
  require_min(c.lemma_grid, 2, "lemma_grid");
  require_min(c.pairs, 1, "pairs");
  require_min(c.fd_points, 1, "fd_points");
  require_min(c.third_samples, 1, "third_samples");
  require_min(c.m_hat_pairs, 1, "m_hat_pairs");
  // Four nested prefixes sigma_count / 8, / 4, / 2, / 1 for the convergence curve.
  require_min(c.sigma_count, 8, "sigma_count");
  require_min(c.cone_count, 2, "cone_count");
  require_min(c.heldout, 1, "heldout");
  require_min(c.support_samples, 1, "support_samples");
  require_min(c.ellipticity_trials, 1, "ellipticity_trials");
  require_min(c.ellipticity_sigma, 2, "ellipticity_sigma");
  require_min(c.viscosity_trials, 1, "viscosity_trials");
  require_min(c.verify_samples, 100, "verify_samples");
  if (c.out.empty()) throw ConfigError("out must not be empty");
}

std::string to_string(LambdaPolicy policy) { return policy == LambdaPolicy::paper ? "paper" : "empirical"; }

}  // namespace quatvisc::verify
