#include "oracles.hpp"
#include "quatvisc/hessian_map.hpp"
#include "quatvisc/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace quatvisc {
namespace {

constexpr std::uint64_t kSeed = 13;
const double kSqrt3 = std::sqrt(3.0);

Vec12 unit(std::uint64_t n, std::string_view stream = "unit") {
  SampleRng rng(kSeed, stream, n);
  return rng.sphere<12>();
}

double max_abs(const Mat12& m) { return m.cwiseAbs().maxCoeff(); }

TEST(EvalW, DiagonalPointAndSymmetries) {
  const Vec12 x = join(Vec4::Unit(0), Vec4::Unit(0), Vec4::Unit(0));
  EXPECT_NEAR(eval_w(x), 1.0 / kSqrt3, 1e-15);
  for (std::uint64_t n = 0; n < 100; ++n) {
    const Vec12 v = unit(n) * 1.7;
    const double w = eval_w(v);
    EXPECT_NEAR(eval_w(2.0 * v), 4.0 * w, 1e-13);
    EXPECT_EQ(eval_w(-v), -w);
  }
  EXPECT_THROW(eval_w(Vec12::Zero()), std::domain_error);
}

TEST(GradW, MatchesCentralDifferences) {
  for (std::uint64_t n = 0; n < 200; ++n) {
    SampleRng rng(kSeed, "gradw", n);
    const Vec12 x = rng.sphere<12>(rng.uniform(0.5, 2.0));
    const Vec12 g = grad_w(x);
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    for (int i = 0; i < 12; ++i) {
      EXPECT_LE(std::abs(g(i) - oracle::directional(eval_w, x, Vec12::Unit(i), 1e-5)) / scale, 1e-7);
    }
  }
}

TEST(HessW, MatchesSecondDifferences) {
  for (std::uint64_t n = 0; n < 200; ++n) {
    SampleRng rng(kSeed, "hessw", n);
    const Vec12 x = rng.sphere<12>(rng.uniform(0.5, 2.0));
    const Mat12 h = hess_w(x);
    const double scale = std::max(1.0, max_abs(h));
    for (int k = 0; k < 4; ++k) {
      const Vec12 e = rng.sphere<12>();
      EXPECT_LE(std::abs(e.dot(h * e) - oracle::second_directional(eval_w, x, e, 1e-4)) / scale, 1e-6);
    }
  }
}

TEST(HessW, OrderZeroHomogeneity) {
  for (std::uint64_t n = 0; n < 100; ++n) {
    const Vec12 x = unit(n);
    EXPECT_LE(max_abs(hess_w(2.0 * x) - hess_w(x)), 1e-13);
    EXPECT_LE(max_abs(hess_w(-x) + hess_w(x)), 1e-13);
  }
  EXPECT_THROW(hess_w(Vec12::Zero()), std::domain_error);
}

TEST(HessW, TangentialSecondDerivative) {
  for (std::uint64_t n = 0; n < 100; ++n) {
    const Vec12 a = unit(n);
    Vec12 e = unit(n, "tangent");
    e -= e.dot(a) * a;
    e.normalize();
    const double p_ee = e.dot(hessian_P(a) * e);
    EXPECT_NEAR(e.dot(hess_w(a) * e), p_ee - eval_P(a), 1e-13);
  }
}

TEST(HMap, WellDefinedOnSphere) {
  const Vec12 a = unit(1);
  const Vec12 twice = 2.0 * a;
  EXPECT_LE(max_abs(H(twice / twice.norm()).matrix() - H(a).matrix()), 1e-15);
  EXPECT_THROW(H(twice), std::invalid_argument);
  EXPECT_THROW(require_unit(1.001 * a, "test"), std::invalid_argument);
}

TEST(HMap, TraceIsFiniteDifferenceLaplacian) {
  for (std::uint64_t n = 0; n < 100; ++n) {
    const Vec12 a = unit(n);
    EXPECT_NEAR(H(a).trace(), oracle::laplacian(eval_w, a, 1e-4), 1e-6);
  }
}

TEST(HMap, SeparationAndOddness) {
  for (std::uint64_t n = 0; n < 1000; ++n) {
    const Vec12 a = unit(n, "pa"), b = unit(n, "pb");
    const Vec12 mu = pair_spectrum(a, b);
    EXPECT_GE(mu(0), (a - b).norm() / (4.0 * kSqrt3) - 1e-9);
    EXPECT_LE(mu(11), -(a - b).norm() / (4.0 * kSqrt3) + 1e-9);
  }
  const Vec12 a = unit(0);
  EXPECT_LE(max_abs(H(-a).matrix() + H(a).matrix()), 1e-15);
}

TEST(PairSpectrum, AntipodalDoublesSpectrum) {
  const Vec12 a = unit(2);
  const Vec12 mu = pair_spectrum(a, -a);
  const Vec12 h = oracle::sym_eigenvalues<12>(H(a).matrix());
  EXPECT_LE((mu - 2.0 * h).cwiseAbs().maxCoeff(), 1e-12);
  const double r = -mu(0) / mu(11);
  EXPECT_GE(r, 1.0 / (1536.0 * kSqrt3));
  EXPECT_LE(r, 1536.0 * kSqrt3);
}

TEST(PairSpectrum, MatchesOracleAndRejectsClosePairs) {
  const Vec12 a = unit(3, "pa"), b = unit(3, "pb");
  const Vec12 want = oracle::sym_eigenvalues<12>(H(a).matrix() - H(b).matrix());
  EXPECT_LE((pair_spectrum(a, b) - want).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_THROW(pair_spectrum(a, a), std::invalid_argument);
}

TEST(PairSpectrum, RatioBoundsOnRandomPairs) {
  const double m = 1536.0 * kSqrt3;
  for (std::uint64_t n = 0; n < 10000; ++n) {
    const Vec12 mu = pair_spectrum(unit(n, "ra"), unit(n, "rb"));
    const double r = -mu(0) / mu(11);
    ASSERT_GE(r, 1.0 / m) << n;
    ASSERT_LE(r, m) << n;
  }
}

TEST(SeparationWitness, RandomPairs) {
  for (std::uint64_t n = 0; n < 10000; ++n) {
    const Vec12 a = unit(n, "wa"), b = unit(n, "wb");
    const auto w = prop2_witness(a, b);
    ASSERT_TRUE(w.ok()) << n;
    EXPECT_NEAR(w.e.norm(), 1.0, 1e-12);
    EXPECT_NEAR(w.f.norm(), 1.0, 1e-12);
    EXPECT_LE(std::abs(w.e.dot(a)) + std::abs(w.e.dot(b)) + std::abs(w.f.dot(a)) + std::abs(w.f.dot(b)), 1e-10);
    // The gains are the tangential second derivatives, computed independently here.
    EXPECT_NEAR(w.gain_e, w.e.dot((hess_w(a) - hess_w(b)) * w.e), 1e-12);
    EXPECT_LE(w.gain_f, -(a - b).norm() / (4.0 * kSqrt3) + 1e-9);
  }
}

TEST(SeparationWitness, ZeroStratum) {
  // a and b share the X block, so d has a = 0 and m(d) = 0.
  for (std::uint64_t n = 0; n < 500; ++n) {
    SampleRng rng(kSeed, "stratum", n);
    const Vec4 x = rng.gaussian<4>();
    const Eigen::Matrix<double, 8, 1> u = rng.sphere<8>(1.0), v = rng.sphere<8>(1.0);
    Vec12 a, b;
    a << x, u;
    b << x, v;
    a /= a.norm();
    b /= b.norm();
    const Direction d = Direction::normalized(a - b);
    EXPECT_LE(d.m(), 1e-12);
    EXPECT_TRUE(prop2_witness(a, b).ok()) << n;
  }
}

TEST(ThirdDerivative, RadialDirectionVanishes) {
  const Vec12 x = unit(4);
  EXPECT_NEAR(third_derivative(x, x, x, x), 0.0, 1e-6);
}

TEST(ThirdDerivative, MatchesDifferencesOfW) {
  for (std::uint64_t n = 0; n < 50; ++n) {
    const Vec12 x = unit(n, "tx"), e = unit(n, "te");
    // Third difference of w along e at x, step 1e-3: error O(h^2).
    const double h = 1e-3;
    const double fd = (eval_w(x + 2 * h * e) - 2 * eval_w(x + h * e) + 2 * eval_w(x - h * e) - eval_w(x - 2 * h * e)) /
                      (2 * h * h * h);
    EXPECT_NEAR(third_derivative(x, e, e, e), fd, 1e-4 * (1 + std::abs(fd)));
  }
}

TEST(ThirdDerivative, SampledBound) {
  EXPECT_LE(third_derivative_bound(2000, kSeed), 32.0 + 1e-3);
}

}  // namespace
}  // namespace quatvisc
