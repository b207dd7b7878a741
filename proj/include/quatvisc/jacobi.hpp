#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace quatvisc {

/// Eigen-decomposition of a real symmetric matrix. Eigenvalues are sorted in
/// descending order; column i of `vectors` belongs to `values[i]`.
template <int N>
struct SymmetricEigen {
  Eigen::Matrix<double, N, 1> values;
  Eigen::Matrix<double, N, N> vectors;
};

namespace detail {

template <int N>
double off_diagonal_norm(const Eigen::Matrix<double, N, N>& a) {
  double sum = 0.0;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) sum += 2.0 * a(i, j) * a(i, j);
  }
  return std::sqrt(sum);
}

}  // namespace detail

inline constexpr double kJacobiRelativeTolerance = 1e-13;
inline constexpr int kJacobiMaxSweeps = 60;

/// Cyclic Jacobi rotation method. Stops when the off-diagonal Frobenius norm
/// drops below kJacobiRelativeTolerance times the Frobenius norm of the input.
/// The input is assumed symmetric; only the upper triangle drives rotations.
template <int N>
SymmetricEigen<N> jacobi_eigen(const Eigen::Matrix<double, N, N>& input, bool want_vectors = true) {
  Eigen::Matrix<double, N, N> a = input;
  Eigen::Matrix<double, N, N> v = Eigen::Matrix<double, N, N>::Identity();

  const double scale = input.norm();
  const double threshold = kJacobiRelativeTolerance * scale;

  int sweep = 0;
  for (; sweep < kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm<N>(a) <= threshold) break;
    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Stable rotation angle: t = tan(theta) with |theta| <= pi/4.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < N; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double new_rp = arp - s * (arq + tau * arp);
          const double new_rq = arq + s * (arp - tau * arq);
          a(r, p) = new_rp;
          a(p, r) = new_rp;
          a(r, q) = new_rq;
          a(q, r) = new_rq;
        }
        if (want_vectors) {
          for (int r = 0; r < N; ++r) {
            const double vrp = v(r, p);
            const double vrq = v(r, q);
            v(r, p) = vrp - s * (vrq + tau * vrp);
            v(r, q) = vrq + s * (vrp - tau * vrq);
          }
        }
      }
    }
  }
  if (sweep == kJacobiMaxSweeps && detail::off_diagonal_norm<N>(a) > threshold) {
    throw std::runtime_error("jacobi_eigen: no convergence");
  }

  std::array<int, N> order;
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  SymmetricEigen<N> out;
  for (int k = 0; k < N; ++k) {
    out.values(k) = a(order[k], order[k]);
    if (want_vectors) out.vectors.col(k) = v.col(order[k]);
  }
  if (!want_vectors) out.vectors.setZero();
  return out;
}

template <int N>
Eigen::Matrix<double, N, 1> jacobi_eigenvalues(const Eigen::Matrix<double, N, N>& input) {
  return jacobi_eigen<N>(input, false).values;
}

}  // namespace quatvisc
