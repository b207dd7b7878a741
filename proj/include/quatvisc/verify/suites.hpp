#pragma once

#include "quatvisc/cone.hpp"
#include "quatvisc/operator.hpp"
#include "quatvisc/verify/config.hpp"
#include "quatvisc/verify/report.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace quatvisc::verify {

// Each sweep draws sample k of a named stream from SampleRng(seed, stream, k),
// so every reported witness can be regenerated on its own.

// ---- spectral structure of the cubic form ----------------------------------

/// The 24 unit Hurwitz quaternions (+-1, +-i, +-j, +-k, (+-1 +-i +-j +-k)/2).
/// Their norms and products are exact in floating point.
std::array<Vec4, 24> hurwitz_units();

struct SpectralSweep {
  Check char_poly;  // max |eigenvalue - characteristic root|
  Check cosine;     // max |eigenvalue - cosine formula|
  Check bounds;     // eigenvalue bounds; worst is the largest bound violation
  Json eigen_table = Json::array();
};

/// Random directions on the sqrt(3)-sphere plus exact strata: all Hurwitz
/// triples (m = 1, n in {0, +-1/2, +-1}) and a = 0 (m = 0).
SpectralSweep spectral_sweep(std::size_t directions, std::uint64_t seed, double tolerance, double slack,
                             std::size_t table_rows = 200);

struct DeltaSweep {
  Check check;
  double delta_hat = 0.0;
};
/// max over samples of max(lambda_perp+ / lambda_3, lambda_perp- / lambda_10); must stay below 3/2.
DeltaSweep delta_sweep(std::size_t samples, std::uint64_t seed);

/// Root bounds of x^3 - 3x - 2m on a uniform grid of m in [-1, 1].
Check cubic_roots_sweep(std::size_t grid);

/// Two-sided bound on P(u) - P(v); worst is the largest bound violation.
Check cor4_sweep(std::size_t pairs, std::uint64_t seed, double slack);

// ---- Hessian map -------------------------------------------------------------

struct FdSweep {
  Check gradient;
  Check hessian;
};
/// Closed-form gradient and Hessian of w against central differences of w.
/// Errors are relative to max(1, |exact|).
FdSweep fd_sweep(std::size_t points, std::uint64_t seed, double tolerance);

struct PairSweep {
  Check witnesses;  // quantitative separation; worst is the largest shortfall
  Check ratio;      // worst is max(r, 1/r) over r = -mu_1 / mu_12
  Check euler;      // |H(a) a - grad w(a)|
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  Json histogram = Json::array();
};
/// Random unit pairs; every 50th pair is antipodal.
PairSweep pair_sweep(std::size_t pairs, std::uint64_t seed, double slack);

/// max |w_efg| over random unit x, e, f, g; bound 32.
Check third_derivative_sweep(std::size_t samples, std::uint64_t seed);

/// Bound on -mu_1 / mu_12 from the cubic-form estimates: 1536 sqrt(3).
double ratio_bound();

/// Empirical max over pairs of max(r, 1/r), r = -mu_1 / mu_12.
double empirical_M(std::size_t pairs, std::uint64_t seed);

/// Cone aperture (n - 1) M with M = ratio_bound() (paper policy) or m_hat (empirical).
double lambda_for(LambdaPolicy policy, double m_hat);

// ---- operator ----------------------------------------------------------------

struct SupportSweep {
  Check zero;
  Check homogeneity;
  Check subadditivity;
  Check gradient;  // finite-difference |grad x| < sqrt(12)
  Check bounds;    // lower and upper Frobenius bounds
};
SupportSweep support_sweep(std::size_t samples, std::uint64_t seed, const ConeParams& cone);

Check graph_check(const SigmaSample& sigma, const ConeParams& cone, double tolerance);

/// Pairwise L_lambda membership on the first `count` points.
Check cone_condition_check(const SigmaSample& sigma, std::size_t count, const ConeParams& cone,
                           const std::string& name);

struct ZeroLevelSweep {
  Check within_gap;  // max |F| / (5 gap bound), per count
  Check monotone;    // largest increase of max |F| between consecutive counts
  std::vector<ZeroLevelPoint> curve;
};
/// Counts n/8, n/4, n/2, n for n = sigma.count(); held-out points from their own seed.
ZeroLevelSweep zero_level_sweep(const SigmaSample& sigma, const ConeParams& cone, std::size_t heldout,
                                std::uint64_t heldout_seed);

struct EllipticitySweep {
  Check monotone;
  Check level_set;
  Check positive_slope;
  Check lambda_hat;
  EllipticityReport report;
};
EllipticitySweep ellipticity_sweep(const OperatorF& op, std::size_t trials, std::uint64_t seed);

struct ViscositySweep {
  Check minorants;
  Check majorants;
  Check margins;
  ViscosityReport report;
};
ViscositySweep viscosity_sweep(const OperatorF& op, std::size_t trials, std::uint64_t seed, double tolerance,
                               std::size_t verify_samples);

// ---- command-level suites ---------------------------------------------------

Report run_verify_spectral(const RunConfig& config);
Report run_verify_hessian(const RunConfig& config);
/// Builds or reuses out/sigma.cache; throws CacheError on a corrupt cache.
Report run_build_operator(const RunConfig& config);
/// Requires out/sigma.cache; throws CacheError when missing or corrupt.
Report run_viscosity_test(const RunConfig& config);

/// Suite names and the report file each one writes inside the output directory.
inline constexpr std::array<const char*, 4> kSuites{"verify-spectral", "verify-hessian", "build-operator",
                                                    "viscosity-test"};
std::filesystem::path suite_report_path(const std::filesystem::path& out, const std::string& suite);

/// Merges the suite reports of `out` into out/report.json and writes
/// out/tables/{eigenvalues,ratio_histogram,maxF_curve}.csv. Throws
/// std::runtime_error listing missing inputs.
Json run_report(const std::filesystem::path& out);

Json config_json(const RunConfig& config);

}  // namespace quatvisc::verify
