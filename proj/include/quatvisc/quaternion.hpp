#pragma once

#include "quatvisc/polynomial.hpp"
#include "quatvisc/types.hpp"

#include <array>
#include <cmath>

namespace quatvisc {

/// Hamilton quaternion t0 + t1 i + t2 j + t3 k.
struct Quaternion {
  double t0 = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;

  static Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
  static Quaternion from_vec(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
  Vec4 to_vec() const { return Vec4(t0, t1, t2, t3); }

  double real() const { return t0; }
  double norm2() const { return t0 * t0 + t1 * t1 + t2 * t2 + t3 * t3; }
  double norm() const { return std::sqrt(norm2()); }
  Quaternion conj() const { return {t0, -t1, -t2, -t3}; }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

Quaternion operator*(const Quaternion& p, const Quaternion& q);
Quaternion operator+(const Quaternion& p, const Quaternion& q);
Quaternion operator-(const Quaternion& p, const Quaternion& q);
Quaternion operator*(double s, const Quaternion& q);

inline Quaternion quat_mul(const Quaternion& p, const Quaternion& q) { return p * q; }

/// The structure matrix M_s. Rows:
///   ( s0, -s1, -s2, -s3)
///   (-s1, -s0, -s3,  s2)
///   (-s2,  s3, -s0, -s1)
///   (-s3, -s2,  s1, -s0)
/// Acting on coordinate vectors, M_s q = conj(s) * conj(q).
Mat4 matrix_M(const Vec4& s);

/// O_s = M_s / |s|. Throws std::domain_error when |s| < kDegenerateNorm.
Mat4 matrix_O(const Vec4& s);

/// O_s + O_s^T.
Mat4 matrix_N(const Vec4& s);

/// (x^2 - |s|^2)(x^2 + 2 s0 x + |s|^2).
Polynomial char_poly_M(const Vec4& s);

/// Characteristic polynomial of M_r M_s M_t:
/// (x^2 - m^2)(x^2 + 2 P(r,s,t) x + m^2) with m = |r||s||t|.
Polynomial char_poly_Mrst(const Vec4& r, const Vec4& s, const Vec4& t);

/// Characteristic polynomial of M_r M_s, the map q -> conj(r) q s:
/// (x^2 - 2(r0 s0 - |r_v||s_v|) x + |r|^2|s|^2)(x^2 - 2(r0 s0 + |r_v||s_v|) x + |r|^2|s|^2),
/// where r_v, s_v are the vector (imaginary) parts. It collapses to a perfect
/// square only when one of r, s is real.
Polynomial char_poly_Mrs(const Vec4& r, const Vec4& s);

/// Spectrum of N_rst = O_rst + O_rst^T, with O_rst = O_r O_s O_t:
/// {2, -2, -2 Pbar, -2 Pbar}, Pbar = Re(r s t) / (|r||s||t|). Sorted descending.
/// Throws std::domain_error when any argument has norm below kDegenerateNorm.
std::array<double, 4> spectrum_N(const Vec4& r, const Vec4& s, const Vec4& t);

/// Checks M_s q == conj(s) * conj(q) coordinate-wise within `tol`.
bool verify_endomorphism(const Vec4& s, const Quaternion& q, double tol = 1e-12);

}  // namespace quatvisc
