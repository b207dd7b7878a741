#include "quatvisc/hessian_map.hpp"

#include "quatvisc/jacobi.hpp"
#include "quatvisc/parallel.hpp"
#include "quatvisc/sampling.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace quatvisc {

namespace {

double checked_norm(const Vec12& x, const char* what) {
  const double r = x.norm();
  if (r <= kDegenerateNorm) throw std::domain_error(std::string(what) + ": undefined at the origin");
  return r;
}

}  // namespace

double eval_w(const Vec12& x) { return eval_P(x) / checked_norm(x, "eval_w"); }

Vec12 grad_w(const Vec12& x) {
  const double r = checked_norm(x, "grad_w");
  return gradient_P(x) / r - eval_P(x) * x / (r * r * r);
}

Mat12 hess_w(const Vec12& x) {
  const double r = checked_norm(x, "hess_w");
  const double r3 = r * r * r;
  const double p = eval_P(x);
  const Vec12 g = gradient_P(x);
  Mat12 h = hessian_P(x) / r;
  h -= (g * x.transpose() + x * g.transpose()) / r3;
  h.diagonal().array() -= p / r3;
  h += (3.0 * p / (r3 * r * r)) * (x * x.transpose());
  return h;
}

void require_unit(const Vec12& a, const char* what) {
  if (std::abs(a.norm() - 1.0) > 1e-12) throw std::invalid_argument(std::string(what) + ": expected a unit vector");
}

SymMat12 H(const Vec12& a) {
  require_unit(a, "H");
  return SymMat12(hess_w(a));
}

Vec12 pair_spectrum(const Vec12& a, const Vec12& b) {
  if ((a - b).norm() < 1e-9) throw std::invalid_argument("pair_spectrum: points coincide");
  return (H(a) - H(b)).eigenvalues();
}

namespace {

// Unit vector in span(cols) orthogonal to a and b.
Vec12 intersect_with_complement(const Eigen::Matrix<double, 12, 3>& span, const Vec12& a, const Vec12& b) {
  Eigen::Matrix<double, 2, 3> constraints;
  constraints.row(0) = a.transpose() * span;
  constraints.row(1) = b.transpose() * span;
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(constraints, Eigen::ComputeFullV);
  const Eigen::Vector3d coeffs = svd.matrixV().col(2);
  Vec12 e = span * coeffs;
  const double n = e.norm();
  if (n < 1e-10) throw WitnessFailure("prop2_witness: subspace intersection is numerically trivial");
  e /= n;
  const double residual = std::max(std::abs(e.dot(a)), std::abs(e.dot(b)));
  if (residual > 1e-8) throw WitnessFailure("prop2_witness: witness not orthogonal to a and b");
  return e;
}

}  // namespace

Prop2Witness prop2_witness(const Vec12& a, const Vec12& b) {
  require_unit(a, "prop2_witness");
  require_unit(b, "prop2_witness");
  const double dist = (a - b).norm();
  if (dist < 1e-9) throw std::invalid_argument("prop2_witness: points coincide");

  const auto report = spectral_report(Direction::normalized(a - b));
  // Eigenvectors carry norm sqrt(3); rescale to an orthonormal frame.
  const Mat12 frame = report.vectors / std::numbers::sqrt3;

  Prop2Witness out;
  out.e = intersect_with_complement(frame.leftCols<3>(), a, b);
  out.f = intersect_with_complement(frame.rightCols<3>(), a, b);
  out.separation = dist / (4.0 * std::numbers::sqrt3);

  const Mat12 ha = hess_w(a);
  const Mat12 hb = hess_w(b);
  out.gain_e = out.e.dot((ha - hb) * out.e);
  out.gain_f = out.f.dot((ha - hb) * out.f);
  return out;
}

double third_derivative(const Vec12& x, const Vec12& e, const Vec12& f, const Vec12& g, double step) {
  const Mat12 plus = hess_w(x + step * g);
  const Mat12 minus = hess_w(x - step * g);
  return e.dot((plus - minus) * f) / (2.0 * step);
}

double third_derivative_bound(std::size_t samples, std::uint64_t seed) {
  std::vector<double> values(samples);
  parallel_for(samples, [&](std::size_t i) {
    SampleRng rng(seed, "third_derivative", i);
    const Vec12 x = rng.sphere<12>();
    const Vec12 e = rng.sphere<12>();
    const Vec12 f = rng.sphere<12>();
    const Vec12 g = rng.sphere<12>();
    values[i] = std::abs(third_derivative(x, e, f, g));
  });
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, v);
  return worst;
}

}  // namespace quatvisc
