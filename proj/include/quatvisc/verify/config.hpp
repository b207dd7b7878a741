#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace CLI {
class App;
}

namespace quatvisc::verify {

enum class LambdaPolicy { paper, empirical };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run depends on. Defaults are the full acceptance-sized sweeps.
struct RunConfig {
  std::uint64_t seed = 42;
  double tolerance = 1e-8;  // eigenvalue vs characteristic-root agreement
  LambdaPolicy lambda_policy = LambdaPolicy::empirical;
  std::filesystem::path out = "quatvisc-out";
  /// When set, replaces every sample count of the suite being run (clamped to the suite minimum).
  std::optional<std::size_t> count;

  // verify-spectral
  std::size_t directions = 10000;
  std::size_t delta_samples = 100000;
  std::size_t cor4_pairs = 10000;
  std::size_t lemma_grid = 2001;
  double bound_slack = 1e-9;

  // verify-hessian
  std::size_t pairs = 100000;
  std::size_t fd_points = 1000;
  std::size_t third_samples = 10000;
  double fd_tolerance = 1e-6;

  // build-operator
  std::size_t m_hat_pairs = 10000;
  std::size_t sigma_count = 2000;
  std::size_t cone_count = 500;
  std::size_t heldout = 200;
  std::optional<std::uint64_t> heldout_seed;  // defaults to seed + 1
  std::size_t support_samples = 1000;
  std::size_t ellipticity_trials = 10000;
  std::size_t ellipticity_sigma = 200;
  double graph_tolerance = 1e-8;
  bool rebuild = false;

  // viscosity-test
  std::size_t viscosity_trials = 1000;
  std::size_t verify_samples = 10000;
  double viscosity_tolerance = 1e-6;

  std::uint64_t effective_heldout_seed() const { return heldout_seed.value_or(seed + 1); }
  std::filesystem::path cache_path() const { return out / "sigma.cache"; }
};

/// Registers every RunConfig field as a long option (--seed, --lambda-policy,
/// ...) and --config, a key = value file using the option names.
void add_run_options(CLI::App& app, RunConfig& config);

/// Applies --count and checks ranges; throws ConfigError.
void finalize(RunConfig& config, const std::string& suite);

std::string to_string(LambdaPolicy policy);

}  // namespace quatvisc::verify
