#include "quatvisc/cone.hpp"

#include "quatvisc/jacobi.hpp"
#include "quatvisc/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace quatvisc {

namespace {

const double kRootDim = std::sqrt(static_cast<double>(kDim));

constexpr double kBisectionWidth = 1e-11;
constexpr int kMaxBisection = 400;

// p - lambda^2 q for the shifted spectrum alpha_i + shift.
double dual_margin(const Vec12& alpha, double shift, double lambda2) {
  double p = 0.0;
  double q = 0.0;
  for (int i = 0; i < kDim; ++i) {
    const double v = alpha(i) + shift;
    if (v > 0.0) p += v; else q -= v;
  }
  return p - lambda2 * q;
}

}  // namespace

ConeParams::ConeParams(double lambda) : lambda_(lambda) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("ConeParams: lambda must be >= 1");
}

SignedMass signed_mass(const Vec12& eigenvalues) {
  SignedMass out;
  for (int i = 0; i < kDim; ++i) {
    if (eigenvalues(i) > 0.0) out.positive += eigenvalues(i); else out.negative -= eigenvalues(i);
  }
  return out;
}

bool in_K(const SymMat12& mat, const ConeParams& cone) {
  const Vec12 ev = mat.eigenvalues();
  const double top = ev(0);
  const double bottom = ev(kDim - 1);
  return bottom > 0.0 && top <= cone.lambda2() * bottom;
}

bool in_K_star(const Vec12& eigenvalues, const ConeParams& cone) {
  const auto mass = signed_mass(eigenvalues);
  return mass.positive >= cone.lambda2() * mass.negative;
}

bool in_K_star(const SymMat12& mat, const ConeParams& cone) { return in_K_star(mat.eigenvalues(), cone); }

bool in_L(const Vec12& eigenvalues, const ConeParams& cone) {
  const auto mass = signed_mass(eigenvalues);
  return mass.positive < cone.lambda2() * mass.negative && mass.negative < cone.lambda2() * mass.positive;
}

bool in_L(const SymMat12& mat, const ConeParams& cone) { return in_L(mat.eigenvalues(), cone); }

bool in_L_by_trace(double trace, double frobenius, const ConeParams& cone) {
  const double l2 = cone.lambda2();
  return std::abs(trace) * (l2 + 1.0) < frobenius * (l2 - 1.0);
}

double support_x_from_eigenvalues(const Vec12& alpha, double frobenius, const ConeParams& cone) {
  if (frobenius == 0.0) return 0.0;
  const double l2 = cone.lambda2();
  // Work in the identity-multiple c; the s-unit answer is sqrt(12) c.
  auto member = [&](double c_s) { return dual_margin(alpha, c_s / kRootDim, l2) >= 0.0; };

  double lo = -cone.lambda() * frobenius;
  double hi = cone.lambda() * frobenius;
  while (!member(hi)) hi *= 2.0;
  while (member(lo)) lo *= 2.0;

  for (int it = 0; it < kMaxBisection && hi - lo > kBisectionWidth; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (member(mid)) hi = mid; else lo = mid;
  }
  // The margin is piecewise linear in c; inside a bracket this narrow it is
  // linear unless a breakpoint falls inside, so interpolate to the root.
  const double f_lo = dual_margin(alpha, lo / kRootDim, l2);
  const double f_hi = dual_margin(alpha, hi / kRootDim, l2);
  if (f_hi > f_lo) {
    const double root = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    if (root >= lo && root <= hi) return root;
  }
  return hi;
}

double support_x(const Mat12& traceless, const ConeParams& cone) {
  return support_x_from_eigenvalues(jacobi_eigenvalues<kDim>(traceless), traceless.norm(), cone);
}

double support_x(const Coords77& z, const ConeParams& cone) { return support_x(traceless_matrix(z), cone); }

double support_x_lower_bound(double frobenius, const ConeParams& cone) {
  const double l2 = cone.lambda2();
  const double k = (l2 - 1.0) / (l2 + 1.0);
  return k * frobenius / std::sqrt(kDim - k * k);
}

double support_x_projection_bound(double trace_projected, int rank, const ConeParams& cone) {
  const double g = cone.lambda2() - 1.0;
  return -kRootDim * g * trace_projected / (kDim + g * rank);
}

double support_x_upper_bound(double frobenius) { return std::sqrt(static_cast<double>(kDim - 1)) * frobenius; }

ConeConditionReport cone_condition(std::span<const SymMat12> set, const ConeParams& cone) {
  if (set.size() < 2) throw std::invalid_argument("cone_condition: need at least two elements");
  const std::size_t n = set.size();
  std::vector<std::vector<std::size_t>> bad(n);
  parallel_for(
      n,
      [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const Mat12 diff = set[i].matrix() - set[j].matrix();
          if (in_L_by_trace(diff.trace(), diff.norm(), cone)) continue;
          if (!in_L(jacobi_eigenvalues<kDim>(diff), cone)) bad[i].push_back(j);
        }
      },
      4);
  ConeConditionReport report;
  report.pairs_checked = n * (n - 1) / 2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : bad[i]) report.violations.emplace_back(i, j);
  }
  return report;
}

}  // namespace quatvisc
