#include "quatvisc/quaternion.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace quatvisc {

Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {
      p.t0 * q.t0 - p.t1 * q.t1 - p.t2 * q.t2 - p.t3 * q.t3,
      p.t0 * q.t1 + p.t1 * q.t0 + p.t2 * q.t3 - p.t3 * q.t2,
      p.t0 * q.t2 - p.t1 * q.t3 + p.t2 * q.t0 + p.t3 * q.t1,
      p.t0 * q.t3 + p.t1 * q.t2 - p.t2 * q.t1 + p.t3 * q.t0,
  };
}

Quaternion operator+(const Quaternion& p, const Quaternion& q) {
  return {p.t0 + q.t0, p.t1 + q.t1, p.t2 + q.t2, p.t3 + q.t3};
}

Quaternion operator-(const Quaternion& p, const Quaternion& q) {
  return {p.t0 - q.t0, p.t1 - q.t1, p.t2 - q.t2, p.t3 - q.t3};
}

Quaternion operator*(double s, const Quaternion& q) { return {s * q.t0, s * q.t1, s * q.t2, s * q.t3}; }

Mat4 matrix_M(const Vec4& s) {
  const double s0 = s(0), s1 = s(1), s2 = s(2), s3 = s(3);
  Mat4 m;
  // clang-format off
  m <<  s0, -s1, -s2, -s3,
       -s1, -s0, -s3,  s2,
       -s2,  s3, -s0, -s1,
       -s3, -s2,  s1, -s0;
  // clang-format on
#ifdef QUATVISC_FAULT_FLIP_M
  // Negative-control build: one deliberately wrong sign.
  m(1, 2) = -m(1, 2);
#endif
  return m;
}

namespace {

void require_nonzero(const Vec4& v, const char* what) {
  if (v.norm() < kDegenerateNorm) throw std::domain_error(std::string(what) + ": degenerate (near-zero) vector");
}

}  // namespace

Mat4 matrix_O(const Vec4& s) {
  require_nonzero(s, "matrix_O");
  return matrix_M(s) / s.norm();
}

Mat4 matrix_N(const Vec4& s) {
  const Mat4 o = matrix_O(s);
  return o + o.transpose();
}

Polynomial char_poly_M(const Vec4& s) {
  const double n2 = s.squaredNorm();
  return Polynomial{-n2, 0.0, 1.0} * Polynomial{n2, 2.0 * s(0), 1.0};
}

Polynomial char_poly_Mrst(const Vec4& r, const Vec4& s, const Vec4& t) {
  const double m2 = r.squaredNorm() * s.squaredNorm() * t.squaredNorm();
  const double p = (Quaternion::from_vec(r) * Quaternion::from_vec(s) * Quaternion::from_vec(t)).real();
  return Polynomial{-m2, 0.0, 1.0} * Polynomial{m2, 2.0 * p, 1.0};
}

Polynomial char_poly_Mrs(const Vec4& r, const Vec4& s) {
  const double rs = r.squaredNorm() * s.squaredNorm();
  const double scalar = r(0) * s(0);
  const double vec = r.tail<3>().norm() * s.tail<3>().norm();
  return Polynomial{rs, -2.0 * (scalar - vec), 1.0} * Polynomial{rs, -2.0 * (scalar + vec), 1.0};
}

std::array<double, 4> spectrum_N(const Vec4& r, const Vec4& s, const Vec4& t) {
  require_nonzero(r, "spectrum_N");
  require_nonzero(s, "spectrum_N");
  require_nonzero(t, "spectrum_N");
  const double p = (Quaternion::from_vec(r) * Quaternion::from_vec(s) * Quaternion::from_vec(t)).real();
  const double pbar = p / (r.norm() * s.norm() * t.norm());
  std::array<double, 4> out{2.0, -2.0, -2.0 * pbar, -2.0 * pbar};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

bool verify_endomorphism(const Vec4& s, const Quaternion& q, double tol) {
  const Vec4 lhs = matrix_M(s) * q.to_vec();
  const Vec4 rhs = (Quaternion::from_vec(s).conj() * q.conj()).to_vec();
  return (lhs - rhs).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace quatvisc
