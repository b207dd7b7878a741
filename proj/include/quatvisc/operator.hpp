#pragma once

#include "quatvisc/cone.hpp"
#include "quatvisc/sym_mat.hpp"
#include "quatvisc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace quatvisc {

/// One sampled point of Sigma = H(S^11): the source a, and the (z, s)
/// coordinates of H(a).
struct SigmaPoint {
  Vec12 a;
  Coords77 z;
  double s = 0.0;
};

SigmaPoint sigma_point(const Vec12& a);

struct SigmaSample {
  std::vector<SigmaPoint> points;
  std::uint64_t seed = 0;

  std::size_t count() const { return points.size(); }
  /// First n points. Samples from one seed are nested by construction.
  SigmaSample prefix(std::size_t n) const;
};

class GraphViolation : public std::runtime_error {
 public:
  GraphViolation(std::size_t i, std::size_t j, double excess);
  std::size_t i;
  std::size_t j;
  double excess;
};

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform sphere samples a_0 .. a_{count-1}; point k depends only on (seed, k).
SigmaSample sample_sigma(std::size_t count, std::uint64_t seed);

struct GraphReport {
  std::size_t ordered_pairs = 0;
  /// Rigorous upper bound on max over ordered pairs of s_i - s_j - x(z_i - z_j).
  /// Pairs settled by the Frobenius lower bound on x contribute |s_i - s_j| - bound.
  double worst_excess = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  /// Max of the excess over pairs evaluated exactly (unordered pairs not settled by the bound).
  double worst_exact = 0.0;
  std::size_t exact_pairs = 0;
};

/// Checks s_i - s_j <= x(z_i - z_j) over all ordered pairs.
GraphReport check_graph(const SigmaSample& sigma, const ConeParams& cone);

/// sample_sigma + check_graph; throws GraphViolation when the excess exceeds tol.
SigmaSample build_sigma(std::size_t count, std::uint64_t seed, const ConeParams& cone, double tol = 1e-8);

/// CSV cache, written to a temporary file and renamed into place.
void save_sigma(const SigmaSample& sigma, const ConeParams& cone, const std::filesystem::path& path);

struct LoadedSigma {
  SigmaSample sigma;
  double lambda = 1.0;
};

/// Throws CacheError on any malformed, truncated or inconsistent file.
LoadedSigma load_sigma(const std::filesystem::path& path);

/// F(mat) = s(mat) - g~(z(mat)), with g~ the inf-convolution extension
///   g~(z) = min_w { s_w + x(z - z_w) }
/// of the sampled graph.
class OperatorF {
 public:
  static constexpr int kPruneRank = 4;

  OperatorF(SigmaSample sigma, ConeParams cone);

  const SigmaSample& sigma() const { return sigma_; }
  const ConeParams& cone() const { return cone_; }

  double g_tilde(const Coords77& z) const;
  double g_tilde_traceless(const Mat12& traceless, const Coords77& z) const;
  double eval(const SymMat12& mat) const;

 private:
  SigmaSample sigma_;
  ConeParams cone_;
  std::vector<Mat12> traceless_;
  // Leading eigenpairs of each stored traceless matrix, for pruning bounds.
  std::vector<Eigen::Matrix<double, kDim, kPruneRank>> top_vectors_;
  std::vector<Eigen::Matrix<double, kPruneRank, 1>> top_values_;
};

inline double g_tilde(const Coords77& z, const OperatorF& op) { return op.g_tilde(z); }
inline double eval_F(const SymMat12& mat, const OperatorF& op) { return op.eval(mat); }

struct EllipticityReport {
  std::size_t trials = 0;
  double min_slope = 0.0;  // over rank-one increments xi xi^T, |xi| = 1
  double max_slope = 0.0;
  double identity_slope = 0.0;  // along I; equals sqrt(12)
  double lambda_hat = 0.0;      // max(max_slope, 1 / min_slope)
  double lambda_paper_chain = 0.0;  // 4 lambda^2 sqrt(12)
  double worst_monotone_drop = 0.0;  // min over trials of F(A + E) - F(A)
  std::size_t monotone_violations = 0;
  std::size_t level_set_violations = 0;
  std::optional<std::size_t> first_failure;  // trial index
  bool pass() const {
    return monotone_violations == 0 && level_set_violations == 0 && min_slope > 0.0 &&
           lambda_hat <= lambda_paper_chain;
  }
};

/// Random A near Sigma, random positive semidefinite E. Checks F(A + E) >= F(A) - 1e-9,
/// measures rank-one slopes, and checks that pairs on one level set of F
/// differ by an element of L_{2 lambda}.
EllipticityReport ellipticity_probe(const OperatorF& op, std::size_t trials, std::uint64_t seed);

struct ViscosityReport {
  std::size_t minorants = 0;
  std::size_t majorants = 0;
  double max_F_minorant = -1e300;  // must be <= tolerance
  double min_F_majorant = 1e300;   // must be >= -tolerance
  double min_sampled_margin = 1e300;  // min over trials of the sampled |w - p| on the sphere
  std::size_t violations = 0;
  std::optional<std::size_t> first_failure;
  double tolerance = 1e-6;
  bool pass() const { return violations == 0; }
};

/// A quadratic p(x) = x^T B x / 2 touching w from below (or above) up to a
/// margin, found by sampling plus projected gradient ascent on the sphere.
struct TouchingQuadratic {
  SymMat12 hessian;  // B - t I (minorant) or B + t I (majorant)
  Vec12 contact;     // approximate touching point on S^11
  double sampled_margin = 0.0;  // min over verification samples of |w - p|
};

TouchingQuadratic touching_quadratic(const Mat12& b, bool minorant, std::uint64_t seed, std::size_t index,
                                     double margin = 1e-6, std::size_t verify_samples = 10000);

/// Minorants: Taylor quadratics at arbitrary points, random quadratics, and
/// -c|x|^2. Since F <= 0 on all of H(S^11), F(p) <= 0 wherever p touches.
/// Majorants touch at a stored Sigma point (plus +c|x|^2): away from the stored
/// points F(H(a)) is only >= -(density gap), so an arbitrary contact point
/// would test the sampling density rather than the operator.
ViscosityReport viscosity_probe(const OperatorF& op, std::size_t trials, std::uint64_t seed,
                                double tolerance = 1e-6, std::size_t verify_samples = 10000);

struct ZeroLevelPoint {
  std::size_t count = 0;
  double max_abs_F = 0.0;
  /// max over held-out a of x(z_a - z_nn) + x(z_nn - z_a), nn the nearest Sigma point in Q.
  double gap_bound = 0.0;
};

/// max |F(H(a))| over held-out points, for operators built from nested prefixes.
std::vector<ZeroLevelPoint> zero_level_curve(const SigmaSample& full, const ConeParams& cone,
                                             std::span<const Vec12> heldout, std::span<const std::size_t> counts);

}  // namespace quatvisc
