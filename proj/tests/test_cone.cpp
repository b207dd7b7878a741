#include "oracles.hpp"
#include "quatvisc/cone.hpp"
#include "quatvisc/hessian_map.hpp"
#include "quatvisc/sampling.hpp"
#include "quatvisc/sym_mat.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace quatvisc {
namespace {

constexpr std::uint64_t kSeed = 17;
const double kRoot12 = std::sqrt(12.0);
const double kPaperLambda = 11.0 * 1536.0 * std::sqrt(3.0);

SymMat12 diag(std::initializer_list<double> head) {
  Mat12 m = Mat12::Zero();
  int i = 0;
  for (double v : head) m(i, i) = v, ++i;
  return SymMat12(m);
}

Coords77 random_z(std::uint64_t n, std::string_view stream = "z") {
  SampleRng rng(kSeed, stream, n);
  return rng.gaussian<kTracelessDim>();
}

// Support function by an exact piecewise-linear solve: the dual-cone margin
// p - lambda^2 q of the shifted spectrum is linear between consecutive
// eigenvalue breakpoints, so locate the bracketing pair and solve there.
double support_oracle(const Mat12& traceless, double lambda) {
  const Vec12 alpha = oracle::sym_eigenvalues<12>(traceless);
  const double l2 = lambda * lambda;
  auto margin = [&](double c) {
    double p = 0, q = 0;
    for (int i = 0; i < 12; ++i) (alpha(i) + c > 0 ? p : q) += std::abs(alpha(i) + c);
    return p - l2 * q;
  };
  std::vector<double> knots;
  for (int i = 0; i < 12; ++i) knots.push_back(-alpha(i));
  std::sort(knots.begin(), knots.end());
  double lo = knots.front(), hi = knots.back();
  if (margin(lo) >= 0) return kRoot12 * lo;
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (margin(knots[k]) >= 0) {
      lo = knots[k - 1];
      hi = knots[k];
      break;
    }
  }
  const double c = lo - margin(lo) * (hi - lo) / (margin(hi) - margin(lo));
  return kRoot12 * c;
}

TEST(SymMat, CoordinatesAreOrthonormal) {
  for (int i = 0; i < kTracelessDim; ++i) {
    EXPECT_NEAR(basis_element(i).trace(), 0.0, 1e-15);
    for (int j = i; j < kTracelessDim; j += 7) {
      EXPECT_NEAR(basis_element(i).cwiseProduct(basis_element(j)).sum(), i == j ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST(SymMat, RoundTripAndInnerProduct) {
  for (std::uint64_t n = 0; n < 50; ++n) {
    SampleRng rng(kSeed, "sym", n);
    const SymMat12 a(rng.symmetric<12>()), b(rng.symmetric<12>());
    EXPECT_NEAR(a.s(), a.trace() / kRoot12, 1e-14);
    const SymMat12 back = SymMat12::from_coords(a.z(), a.s());
    EXPECT_LE((back.matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(a.dot(b), a.z().dot(b.z()) + a.s() * b.s(), 1e-12);
    EXPECT_NEAR(a.norm() * a.norm(), a.z().squaredNorm() + a.s() * a.s(), 1e-11);
    EXPECT_LE((a.eigenvalues() - oracle::sym_eigenvalues<12>(a.matrix())).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_EQ(basis_version_hash(), basis_version_hash());
  EXPECT_FALSE(basis_description().empty());
}

TEST(ConeParams, RejectsApertureBelowOne) {
  EXPECT_THROW(ConeParams(0.99), std::invalid_argument);
  EXPECT_THROW(ConeParams(std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(ConeParams(1.0));
}

TEST(InK, Examples) {
  for (double lambda : {1.0, 2.0, 100.0}) EXPECT_TRUE(in_K(SymMat12::identity(), ConeParams(lambda)));
  const ConeParams cone(3.0);
  Mat12 m = Mat12::Identity();
  m(0, 0) = cone.lambda2() + 0.01;
  EXPECT_FALSE(in_K(SymMat12(m), cone));
  m(0, 0) = cone.lambda2();
  EXPECT_TRUE(in_K(SymMat12(m), cone));
  EXPECT_FALSE(in_K(-1.0 * SymMat12::identity(), cone));
  EXPECT_FALSE(in_K(SymMat12(), cone));
}

TEST(InKStar, Examples) {
  const ConeParams cone(3.0);
  const double l2 = cone.lambda2();
  for (double lambda : {1.0, 5.0}) EXPECT_TRUE(in_K_star(SymMat12::identity(), ConeParams(lambda)));
  SampleRng rng(kSeed, "psd", 0);
  Eigen::Matrix<double, 12, 5> g;
  for (int k = 0; k < 5; ++k) g.col(k) = rng.gaussian<12>();
  EXPECT_TRUE(in_K_star(SymMat12(g * g.transpose()), cone));
  EXPECT_TRUE(in_K_star(diag({l2, -1.0}), cone));
  EXPECT_FALSE(in_K_star(diag({l2 - 0.01, -1.0}), cone));
}

TEST(InKStar, DualityAgainstSampledK) {
  const ConeParams cone(2.0);
  for (std::uint64_t n = 0; n < 200; ++n) {
    SampleRng rng(kSeed, "dual", n);
    const SymMat12 b(rng.symmetric<12>());
    Eigen::SelfAdjointEigenSolver<Mat12> solver(b.matrix());
    const Mat12 v = solver.eigenvectors();
    // The minimizing element of K: eigenvalue 1 on the positive part of b, lambda^2 on the negative part.
    Vec12 c_diag;
    for (int i = 0; i < 12; ++i) c_diag(i) = solver.eigenvalues()(i) > 0 ? 1.0 : cone.lambda2();
    const SymMat12 c(v * c_diag.asDiagonal() * v.transpose());
    // c sits on the boundary of K; allow for rounding in its reconstruction.
    ASSERT_TRUE(in_K(c, ConeParams(cone.lambda() * (1 + 1e-12))));
    const double min_pairing = b.dot(c);
    EXPECT_EQ(in_K_star(b, cone), min_pairing >= 0.0) << n;
    // No random element of K does better than the extremal one.
    for (int k = 0; k < 20; ++k) {
      Vec12 d;
      for (int i = 0; i < 12; ++i) d(i) = rng.uniform(1.0, cone.lambda2());
      Eigen::HouseholderQR<Mat12> qr(rng.symmetric<12>());
      const Mat12 q = qr.householderQ();
      EXPECT_GE(b.dot(SymMat12(q * d.asDiagonal() * q.transpose())), min_pairing - 1e-10);
    }
  }
}

TEST(InL, Examples) {
  for (double lambda : {1.0001, 2.0, kPaperLambda}) EXPECT_TRUE(in_L(diag({1.0, -1.0}), ConeParams(lambda)));
  EXPECT_FALSE(in_L(SymMat12::identity(), ConeParams(5.0)));
  EXPECT_FALSE(in_L(diag({1.0, -1.0}), ConeParams(1.0)));
}

TEST(InL, MonotoneInLambda) {
  for (std::uint64_t n = 0; n < 500; ++n) {
    SampleRng rng(kSeed, "Lmono", n);
    const SymMat12 m(rng.symmetric<12>() + rng.uniform(-3, 3) * Mat12::Identity());
    bool previous = false;
    for (double lambda : {1.0, 1.1, 1.5, 2.0, 4.0, 10.0}) {
      const bool now = in_L(m, ConeParams(lambda));
      EXPECT_TRUE(!previous || now);
      previous = now;
    }
  }
}

TEST(InL, TraceShortcutIsSound) {
  for (std::uint64_t n = 0; n < 2000; ++n) {
    SampleRng rng(kSeed, "Ltrace", n);
    const SymMat12 m(rng.symmetric<12>() + rng.uniform(-2, 2) * Mat12::Identity());
    const ConeParams cone(rng.uniform(1.0, 3.0));
    EXPECT_TRUE(!in_L_by_trace(m.trace(), m.norm(), cone) || in_L(m, cone)) << n;
  }
}

TEST(SupportX, ZeroAndHomogeneity) {
  const ConeParams cone(2.5);
  EXPECT_EQ(support_x(Coords77(Coords77::Zero()), cone), 0.0);
  for (std::uint64_t n = 0; n < 200; ++n) {
    const Coords77 z = random_z(n);
    const double x = support_x(z, cone);
    EXPECT_NEAR(support_x(Coords77(2.0 * z), cone), 2.0 * x, 1e-9 * (1 + std::abs(x)));
    EXPECT_NEAR(support_x(Coords77(0.25 * z), cone), 0.25 * x, 1e-9 * (1 + std::abs(x)));
  }
}

TEST(SupportX, MatchesPiecewiseLinearOracle) {
  for (double lambda : {1.0, 1.3, 3.0, 30.0}) {
    const ConeParams cone(lambda);
    for (std::uint64_t n = 0; n < 200; ++n) {
      const Coords77 z = random_z(n, "oracle");
      const Mat12 a = traceless_matrix(z);
      EXPECT_NEAR(support_x(z, cone), support_oracle(a, lambda), 1e-9 * (1 + a.norm())) << lambda << " " << n;
    }
  }
}

TEST(SupportX, DefinitionAtTheInfimum) {
  const ConeParams cone(2.0);
  for (std::uint64_t n = 0; n < 100; ++n) {
    const Mat12 a = traceless_matrix(random_z(n, "inf"));
    const double x = support_x(a, cone);
    const Mat12 shift = Mat12::Identity() / kRoot12;
    EXPECT_TRUE(in_K_star(SymMat12(a + (x + 1e-9) * shift), cone));
    EXPECT_FALSE(in_K_star(SymMat12(a + (x - 1e-6) * shift), cone));
  }
}

TEST(SupportX, ConvexAndSubadditive) {
  const ConeParams cone(2.0);
  for (std::uint64_t n = 0; n < 1000; ++n) {
    const Coords77 u = random_z(n, "cu"), v = random_z(n, "cv");
    const double xu = support_x(u, cone), xv = support_x(v, cone);
    EXPECT_LE(support_x(Coords77(0.5 * (u + v)), cone), 0.5 * (xu + xv) + 1e-9);
    EXPECT_LE(support_x(Coords77(u + v), cone), xu + xv + 1e-9);
  }
}

TEST(SupportX, GradientBelowRootTwelve) {
  const ConeParams cone(5.0);
  for (std::uint64_t n = 0; n < 300; ++n) {
    const Coords77 z = random_z(n, "grad");
    Coords77 g;
    const double h = 1e-6 * z.norm();
    for (int k = 0; k < kTracelessDim; ++k) {
      const Coords77 step = h * Coords77::Unit(k);
      g(k) = (support_x(Coords77(z + step), cone) - support_x(Coords77(z - step), cone)) / (2 * h);
    }
    EXPECT_LT(g.norm(), kRoot12);
  }
}

TEST(SupportX, BoundsHold) {
  for (double lambda : {1.5, 10.0}) {
    const ConeParams cone(lambda);
    for (std::uint64_t n = 0; n < 300; ++n) {
      const Mat12 a = traceless_matrix(random_z(n, "bounds"));
      const double x = support_x(a, cone);
      const double f = a.norm();
      EXPECT_LE(support_x_lower_bound(f, cone), x + 1e-12);
      EXPECT_LE(x, support_x_upper_bound(f) + 1e-12);
      const auto eig = oracle::sym_eigenvalues<12>(a);
      double low = 0.0;
      for (int r = 1; r <= 4; ++r) {
        low += eig(12 - r);
        EXPECT_LE(support_x_projection_bound(low, r, cone), x + 1e-12);
      }
    }
  }
}

TEST(ConeCondition, TwoElementSet) {
  const SymMat12 a = SymMat12::identity();
  const std::vector<SymMat12> set{a, a + diag({1.0, -1.0})};
  const auto report = cone_condition(set, ConeParams(2.0));
  EXPECT_TRUE(report.pass());
  EXPECT_EQ(report.pairs_checked, 1u);
  EXPECT_THROW(cone_condition(std::span(set).first(1), ConeParams(2.0)), std::invalid_argument);
}

std::vector<SymMat12> sampled_sigma(std::size_t count) {
  std::vector<SymMat12> out;
  for (std::size_t n = 0; n < count; ++n) {
    SampleRng rng(kSeed, "sigma", n);
    out.push_back(H(rng.sphere<12>()));
  }
  return out;
}

TEST(ConeCondition, SampledSigmaAtPaperAperture) {
  const auto report = cone_condition(sampled_sigma(500), ConeParams(kPaperLambda));
  EXPECT_EQ(report.pairs_checked, 500u * 499u / 2u);
  EXPECT_TRUE(report.pass());
}

TEST(ConeCondition, SampledSigmaFailsAtApertureOne) {
  const auto report = cone_condition(sampled_sigma(20), ConeParams(1.0));
  EXPECT_FALSE(report.pass());
  EXPECT_EQ(report.violations.size(), report.pairs_checked);
}

}  // namespace
}  // namespace quatvisc
