#include "quatvisc/cubic_form.hpp"

#include "quatvisc/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quatvisc {

namespace {
constexpr double kSqrt3 = std::numbers::sqrt3;
}

Vec12 join(const Vec4& x, const Vec4& y, const Vec4& z) {
  Vec12 v;
  v << x, y, z;
  return v;
}

double eval_P(const Vec12& v) {
  const double X0 = v(0), X1 = v(1), X2 = v(2), X3 = v(3);
  const double Y0 = v(4), Y1 = v(5), Y2 = v(6), Y3 = v(7);
  const double Z0 = v(8), Z1 = v(9), Z2 = v(10), Z3 = v(11);
  // clang-format off
  return X0 * Y0 * Z0 - X0 * Y1 * Z1 - X0 * Y2 * Z2 - X0 * Y3 * Z3
       - X1 * Y0 * Z1 - X1 * Y1 * Z0 - X1 * Y2 * Z3 + X1 * Y3 * Z2
       - X2 * Y0 * Z2 + X2 * Y1 * Z3 - X2 * Y2 * Z0 - X2 * Y3 * Z1
       - X3 * Y0 * Z3 - X3 * Y1 * Z2 + X3 * Y2 * Z1 - X3 * Y3 * Z0;
  // clang-format on
}

double eval_P_quaternion(const Vec12& v) {
  return (quaternion_part(v, 0) * quaternion_part(v, 1) * quaternion_part(v, 2)).real();
}

Vec12 gradient_P(const Vec12& v) {
  const Quaternion x = quaternion_part(v, 0);
  const Quaternion y = quaternion_part(v, 1);
  const Quaternion z = quaternion_part(v, 2);
  // Re(q w) is linear in q with coefficient vector conj(w); Re is invariant
  // under cyclic permutation, so d/dY Re(x q z) = conj(z x).
  return join((y * z).conj().to_vec(), (z * x).conj().to_vec(), (x * y).conj().to_vec());
}

Mat12 hessian_P(const Vec12& v) {
  const Mat4 ma = matrix_M(block(v, 0));
  const Mat4 mb = matrix_M(block(v, 1));
  const Mat4 mc = matrix_M(block(v, 2));
  Mat12 h = Mat12::Zero();
  h.block<4, 4>(0, 4) = mc;
  h.block<4, 4>(4, 0) = mc.transpose();
  h.block<4, 4>(0, 8) = mb.transpose();
  h.block<4, 4>(8, 0) = mb;
  h.block<4, 4>(4, 8) = ma;
  h.block<4, 4>(8, 4) = ma.transpose();
  return h;
}

Direction::Direction(const Vec12& d)
    : d_(d), m_(block(d, 0).norm() * block(d, 1).norm() * block(d, 2).norm()), n_(eval_P(d)) {}

Direction Direction::from_sqrt3(const Vec12& d) {
  if (std::abs(d.squaredNorm() - 3.0) > 1e-12) {
    throw std::invalid_argument("Direction::from_sqrt3: |d|^2 must equal 3");
  }
  return Direction(d);
}

Direction Direction::normalized(const Vec12& v) {
  const double n = v.norm();
  if (n < kDegenerateNorm) throw std::invalid_argument("Direction::normalized: zero vector");
  return Direction(v * (kSqrt3 / n));
}

Mat12 matrix_2Qd(const Direction& d) { return hessian_P(d.vec()); }

SpectralReport spectral_report(const Direction& d) {
  const auto eig = jacobi_eigen<12>(matrix_2Qd(d));
  SpectralReport out{eig.values, eig.vectors, d};
  for (int i = 0; i < 12; ++i) {
    auto col = out.vectors.col(i);
    col *= kSqrt3 / col.norm();
    if (col.dot(d.vec()) < 0.0) col = -col;
  }
  return out;
}

Polynomial char_poly_CHd(const Direction& d) {
  const double m = d.m();
  const double n = d.n();
  const Polynomial plus_m{2.0 * m, -3.0, 0.0, 1.0};
  const Polynomial minus_m{-2.0 * m, -3.0, 0.0, 1.0};
  const Polynomial plus_n{2.0 * n, -3.0, 0.0, 1.0};
  return plus_m * minus_m * plus_n.pow(2);
}

std::array<double, 12> spectrum_closed_form(const Direction& d) {
  const double alpha = std::acos(std::clamp(d.m(), -1.0, 1.0));
  const double beta = std::acos(std::clamp(d.n(), -1.0, 1.0));
  const double pi = std::numbers::pi;
  std::array<double, 12> out{};
  int idx = 0;
  for (int k = 0; k < 6; ++k) out[idx++] = 2.0 * std::cos(alpha / 3.0 + pi * k / 3.0);
  for (int l = 0; l < 3; ++l) {
    const double root = 2.0 * std::cos(beta / 3.0 + pi * (2 * l + 1) / 3.0);
    out[idx++] = root;
    out[idx++] = root;
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

bool verify_cor2(const SpectralReport& r, double slack) {
  return r.lambda(1) <= 2.0 + slack && r.lambda(4) >= 1.0 - slack && r.lambda(9) <= -1.0 + slack &&
         r.lambda(12) >= -2.0 - slack && r.lambda(1) >= kSqrt3 - slack && r.lambda(12) <= -kSqrt3 + slack;
}

Eigen::Matrix<double, 12, 11> orthogonal_complement(const Vec12& v) {
  const double n = v.norm();
  if (n < kDegenerateNorm) throw std::invalid_argument("orthogonal_complement: zero vector");
  // Householder reflector sending v/|v| to -sign(v0) e0; its other columns span v-perp.
  Vec12 u = v / n;
  u(0) += (u(0) >= 0.0 ? 1.0 : -1.0);
  const Mat12 reflector = Mat12::Identity() - 2.0 * u * u.transpose() / u.squaredNorm();
  return reflector.rightCols<11>();
}

PerpExtremes lambda_perp(const Direction& d) {
  const auto basis = orthogonal_complement(d.vec());
  const Eigen::Matrix<double, 11, 11> compressed = basis.transpose() * matrix_2Qd(d) * basis;
  const auto values = jacobi_eigenvalues<11>(compressed);
  return {values(0), values(10)};
}

CubicRootsCheck cubic_roots_check(double m) {
  if (!(std::abs(m) <= 1.0)) throw std::domain_error("cubic_roots_check: |m| must not exceed 1");
  const double pi = std::numbers::pi;
  const double theta = std::acos(m) / 3.0;
  CubicRootsCheck out;
  for (int k = 0; k < 3; ++k) out.roots[k] = 2.0 * std::cos(theta + 2.0 * pi * k / 3.0);
  std::sort(out.roots.begin(), out.roots.end(), std::greater<>());
  const double x1 = out.roots[0];
  const double x3 = out.roots[2];
  constexpr double tol = 1e-12;

  if (m >= 0.0) {
    out.part1 = x1 <= 2.0 + tol && x1 >= kSqrt3 - tol && x3 <= -1.0 + tol;
    // Equality at either end only occurs for m = 1.
    const bool touches = std::abs(x1 - 2.0) <= tol || std::abs(x3 + 1.0) <= tol;
    if (touches && std::abs(m - 1.0) > 1e-9) out.part1 = false;
  }
  if (m <= 0.0) {
    out.part2 = x3 >= -2.0 - tol && x3 <= -kSqrt3 + tol && x1 >= 1.0 - tol;
    const bool touches = std::abs(x1 - 1.0) <= tol || std::abs(x3 + 2.0) <= tol;
    if (touches && std::abs(m + 1.0) > 1e-9) out.part2 = false;
  }
  if (std::abs(m) <= 0.75) out.part3 = std::abs(x1) > 1.38 && std::abs(x3) > 1.38;
  return out;
}

Cor4Result cor4_evaluate(const Vec12& u, const Vec12& v, double slack) {
  if (std::abs(u.squaredNorm() - 3.0) > 1e-9 || std::abs(v.squaredNorm() - 3.0) > 1e-9) {
    throw std::invalid_argument("cor4_check: inputs must lie on the sphere of radius sqrt(3)");
  }
  const double dist = (u - v).norm();
  if (dist < 1e-9) throw std::invalid_argument("cor4_check: |u - v| too small");
  const auto report = spectral_report(Direction::normalized(u - v));
  Cor4Result out;
  out.difference = eval_P(u) - eval_P(v);
  out.upper_bound = 3.0 * kSqrt3 * report.lambda(3) * dist / 4.0;
  out.lower_bound = 3.0 * kSqrt3 * report.lambda(10) * dist / 4.0;
  out.upper_ok = out.difference <= out.upper_bound + slack;
  out.lower_ok = out.difference >= out.lower_bound - slack;
  return out;
}

}  // namespace quatvisc
