#include "oracles.hpp"
#include "quatvisc/hessian_map.hpp"
#include "quatvisc/operator.hpp"
#include "quatvisc/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace quatvisc {
namespace {

constexpr std::uint64_t kSeed = 19;
const double kRoot12 = std::sqrt(12.0);
// Comfortably above (n - 1) times the empirical pair-ratio maximum (about 3).
const ConeParams kCone(40.0);

const OperatorF& small_operator() {
  static const OperatorF op(build_sigma(200, kSeed, kCone), kCone);
  return op;
}

Vec12 heldout(std::uint64_t n) {
  SampleRng rng(kSeed + 1, "heldout", n);
  return rng.sphere<12>();
}

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "quatvisc_test_operator";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Sigma, AntipodalPairHasOppositeTraces) {
  const Vec12 a = heldout(0);
  const SigmaPoint p = sigma_point(a), q = sigma_point(-a);
  EXPECT_NEAR(p.s, -q.s, 1e-15);
  EXPECT_LE((p.z + q.z).cwiseAbs().maxCoeff(), 1e-15);
  SigmaSample pair;
  pair.points = {p, q};
  const auto report = check_graph(pair, kCone);
  EXPECT_EQ(report.ordered_pairs, 2u);
  EXPECT_LE(report.worst_excess, 1e-8);
}

TEST(Sigma, TraceCoordinateIsScaledLaplacian) {
  const auto& sigma = small_operator().sigma();
  for (std::size_t k = 0; k < 50; ++k) {
    const auto& p = sigma.points[k];
    EXPECT_NEAR(p.s, oracle::laplacian(eval_w, p.a, 1e-4) / kRoot12, 1e-6);
  }
}

TEST(Sigma, SamplesAreNestedAndSeeded) {
  const SigmaSample big = sample_sigma(40, kSeed);
  const SigmaSample small = sample_sigma(10, kSeed);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(big.points[k].a, small.points[k].a);
  EXPECT_EQ(big.prefix(10).count(), 10u);
  EXPECT_EQ(big.prefix(10).points.back().a, small.points.back().a);
  EXPECT_NE(sample_sigma(10, kSeed + 1).points[0].a, small.points[0].a);
  for (const auto& p : big.points) EXPECT_NEAR(p.a.norm(), 1.0, 1e-15);
}

TEST(Sigma, GraphInvariantOn500Points) {
  const auto report = check_graph(sample_sigma(500, 42), kCone);
  EXPECT_EQ(report.ordered_pairs, 500u * 499u);
  EXPECT_LE(report.worst_excess, 1e-8);
  EXPECT_LE(report.worst_exact, report.worst_excess);
}

TEST(Sigma, GraphViolationAtApertureOne) {
  // At lambda = 1 the support function vanishes, so distinct traces break the graph.
  EXPECT_THROW(build_sigma(20, kSeed, ConeParams(1.0)), GraphViolation);
}

TEST(GTilde, ReproducesStoredPoints) {
  const auto& op = small_operator();
  for (const auto& p : op.sigma().points) {
    EXPECT_NEAR(op.g_tilde(p.z), p.s, 1e-8);
    EXPECT_LE(g_tilde(p.z, op), p.s + 1e-12);
  }
}

TEST(GTilde, TwoSidedConeBound) {
  const auto& op = small_operator();
  for (std::uint64_t n = 0; n < 1000; ++n) {
    SampleRng rng(kSeed, "gpair", n);
    const Coords77 z = H(rng.sphere<12>()).z() + 0.1 * rng.gaussian<kTracelessDim>();
    const Coords77 zh = H(rng.sphere<12>()).z() + 0.1 * rng.gaussian<kTracelessDim>();
    const double diff = op.g_tilde(z) - op.g_tilde(zh);
    EXPECT_LE(diff, support_x(Coords77(z - zh), kCone) + 1e-9) << n;
    EXPECT_GE(diff, -support_x(Coords77(zh - z), kCone) - 1e-9) << n;
  }
}

TEST(GTilde, MidpointBetweenEndpointBounds) {
  const auto& op = small_operator();
  for (std::size_t i = 0; i + 1 < 100; i += 2) {
    const auto& p = op.sigma().points[i];
    const auto& q = op.sigma().points[i + 1];
    const Coords77 mid = 0.5 * (p.z + q.z);
    const double g = op.g_tilde(mid);
    for (const auto* end : {&p, &q}) {
      EXPECT_LE(g, end->s + support_x(Coords77(mid - end->z), kCone) + 1e-9);
      EXPECT_GE(g, end->s - support_x(Coords77(end->z - mid), kCone) - 1e-9);
    }
  }
}

TEST(GTilde, MatchesBruteForceMinimum) {
  const auto& op = small_operator();
  for (std::uint64_t n = 0; n < 20; ++n) {
    SampleRng rng(kSeed, "brute", n);
    const Coords77 z = H(rng.sphere<12>()).z() + rng.uniform(0, 0.5) * rng.gaussian<kTracelessDim>();
    double best = 1e300;
    for (const auto& p : op.sigma().points) best = std::min(best, p.s + support_x(Coords77(z - p.z), kCone));
    EXPECT_NEAR(op.g_tilde(z), best, 1e-9);
  }
}

TEST(EvalF, StoredPointsAreOnTheZeroLevel) {
  const auto& op = small_operator();
  for (const auto& p : op.sigma().points) EXPECT_LE(std::abs(op.eval(SymMat12::from_coords(p.z, p.s))), 1e-8);
}

TEST(EvalF, HeldOutPointsAreBelowZeroWithinGap) {
  const auto& op = small_operator();
  for (std::uint64_t n = 0; n < 50; ++n) {
    const SigmaPoint a = sigma_point(heldout(n));
    const double f = eval_F(SymMat12::from_coords(a.z, a.s), op);
    EXPECT_LE(f, 1e-9);
    // Any stored point w bounds F from below by -(x(z_a - z_w) + x(z_w - z_a)).
    const auto& w = op.sigma().points[n];
    EXPECT_GE(f, -support_x(Coords77(a.z - w.z), kCone) - support_x(Coords77(w.z - a.z), kCone) - 1e-9);
  }
}

TEST(EvalF, IdentityShiftHasSlopeRootTwelve) {
  const auto& op = small_operator();
  const SymMat12 a = H(op.sigma().points[7].a);
  double previous = op.eval(a);
  for (double t : {0.01, 0.1, 1.0, 5.0}) {
    const double f = op.eval(a + t * SymMat12::identity());
    EXPECT_GT(f, 0.0);
    EXPECT_GT(f, previous);
    EXPECT_NEAR(f, kRoot12 * t, 1e-8);
    previous = f;
  }
}

TEST(EvalF, LargeMultiplesOfIdentity) {
  const auto& op = small_operator();
  EXPECT_LT(op.eval(-100.0 * SymMat12::identity()), 0.0);
  EXPECT_GT(op.eval(100.0 * SymMat12::identity()), 0.0);
}

TEST(EvalF, MonotoneUnderPsdIncrements) {
  const auto& op = small_operator();
  for (std::uint64_t n = 0; n < 300; ++n) {
    SampleRng rng(kSeed, "mono", n);
    const SymMat12 a(H(rng.sphere<12>()).matrix() + 0.3 * rng.symmetric<12>());
    Eigen::Matrix<double, 12, 3> g;
    for (int k = 0; k < 3; ++k) g.col(k) = rng.gaussian<12>();
    const SymMat12 e(rng.uniform(0.0, 0.1) * g * g.transpose());
    EXPECT_GE(op.eval(a + e), op.eval(a) - 1e-9) << n;
  }
}

TEST(Ellipticity, ProbePasses) {
  const auto report = ellipticity_probe(small_operator(), 200, kSeed);
  EXPECT_EQ(report.trials, 200u);
  EXPECT_TRUE(report.pass());
  EXPECT_GT(report.min_slope, 0.0);
  EXPECT_NEAR(report.identity_slope, kRoot12, 1e-6);
  EXPECT_NEAR(report.lambda_paper_chain, 4.0 * kCone.lambda2() * kRoot12, 1e-9);
}

TEST(Viscosity, TouchingQuadraticStaysOnOneSide) {
  for (bool minorant : {true, false}) {
    SampleRng rng(kSeed, "touch", minorant);
    const Mat12 b = rng.symmetric<12>();
    const auto t = touching_quadratic(b, minorant, kSeed, 0, 1e-6, 2000);
    EXPECT_GE(t.sampled_margin, 1e-6);
    const double sign = minorant ? 1.0 : -1.0;
    auto gap = [&](const Vec12& x) { return sign * (eval_w(x) - 0.5 * x.dot(t.hessian.matrix() * x)); };
    for (std::uint64_t n = 0; n < 20000; ++n) {
      SampleRng check(kSeed + 5, "touch_check", n);
      EXPECT_GE(gap(check.sphere<12>()), 1e-6);
    }
    // The shift is tight: at the contact point the gap is the margin itself.
    EXPECT_NEAR(gap(t.contact), 1e-6, 1e-9);
  }
}

TEST(Viscosity, ScalarQuadratics) {
  const auto& op = small_operator();
  EXPECT_LT(op.eval(-10.0 * SymMat12::identity()), 0.0);
  EXPECT_GT(op.eval(10.0 * SymMat12::identity()), 0.0);
}

TEST(Viscosity, ProbePasses) {
  const auto report = viscosity_probe(small_operator(), 40, kSeed, 1e-6, 2000);
  EXPECT_EQ(report.minorants, 40u);
  EXPECT_EQ(report.majorants, 40u);
  EXPECT_TRUE(report.pass());
  EXPECT_LE(report.max_F_minorant, 1e-6);
  EXPECT_GE(report.min_F_majorant, -1e-6);
}

TEST(ZeroLevel, CurveWithinExactGapBound) {
  const SigmaSample full = sample_sigma(200, kSeed);
  std::vector<Vec12> test;
  for (std::uint64_t n = 0; n < 30; ++n) test.push_back(heldout(n));
  const std::vector<std::size_t> counts{25, 50, 100, 200};
  const auto curve = zero_level_curve(full, kCone, test, counts);
  ASSERT_EQ(curve.size(), 4u);
  for (std::size_t k = 0; k < curve.size(); ++k) {
    EXPECT_EQ(curve[k].count, counts[k]);
    EXPECT_LE(curve[k].max_abs_F, curve[k].gap_bound + 1e-9);
    if (k > 0) {
      EXPECT_LE(curve[k].max_abs_F, curve[k - 1].max_abs_F);
    }
  }
}

TEST(Cache, RoundTrip) {
  const auto path = temp_file("round.cache");
  const SigmaSample sigma = sample_sigma(12, kSeed);
  save_sigma(sigma, kCone, path);
  const LoadedSigma loaded = load_sigma(path);
  EXPECT_EQ(loaded.lambda, kCone.lambda());
  EXPECT_EQ(loaded.sigma.seed, kSeed);
  ASSERT_EQ(loaded.sigma.count(), 12u);
  for (std::size_t k = 0; k < 12; ++k) {
    EXPECT_EQ(loaded.sigma.points[k].a, sigma.points[k].a);
    EXPECT_EQ(loaded.sigma.points[k].z, sigma.points[k].z);
    EXPECT_EQ(loaded.sigma.points[k].s, sigma.points[k].s);
  }
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) { std::ofstream(path) << text; }

TEST(Cache, RejectsDamage) {
  const auto path = temp_file("damaged.cache");
  save_sigma(sample_sigma(6, kSeed), kCone, path);
  const std::string good = slurp(path);

  EXPECT_THROW(load_sigma(temp_file("missing.cache")), CacheError);

  spit(path, good.substr(0, good.size() / 2));  // truncated
  EXPECT_THROW(load_sigma(path), CacheError);

  std::string flipped = good;
  const auto last_line = flipped.rfind('\n', flipped.size() - 2) + 1;
  flipped[last_line + 3] = flipped[last_line + 3] == '1' ? '2' : '1';  // a digit of a coordinate
  spit(path, flipped);
  EXPECT_THROW(load_sigma(path), CacheError);

  spit(path, "not a cache\n");
  EXPECT_THROW(load_sigma(path), CacheError);

  spit(path, "");
  EXPECT_THROW(load_sigma(path), CacheError);
}

}  // namespace
}  // namespace quatvisc
