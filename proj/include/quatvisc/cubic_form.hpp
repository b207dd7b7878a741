#pragma once

#include "quatvisc/polynomial.hpp"
#include "quatvisc/quaternion.hpp"
#include "quatvisc/types.hpp"

#include <array>

namespace quatvisc {

// A point V = (X, Y, Z) of R^12 is stored as a plain Vec12 whose three
// 4-blocks are the quaternion coordinates of X, Y and Z.

inline Vec4 block(const Vec12& v, int k) { return v.segment<4>(4 * k); }
inline Quaternion quaternion_part(const Vec12& v, int k) { return Quaternion::from_vec(block(v, k)); }
Vec12 join(const Vec4& x, const Vec4& y, const Vec4& z);

/// P(X, Y, Z) = Re(qX qY qZ), evaluated from the explicit 16-term expansion.
double eval_P(const Vec12& v);

/// Same cubic, evaluated as a product of quaternions.
double eval_P_quaternion(const Vec12& v);

/// Gradient of P, computed from quaternion products (independent of M_s).
Vec12 gradient_P(const Vec12& v);

/// Hessian of P at v. This is the block matrix
///   [ 0      M_Z    M_Y^T ]
///   [ M_Z^T  0      M_X   ]
///   [ M_Y    M_X^T  0     ]
/// built from the structure matrices. It is linear in v, and at a direction d
/// it is the matrix of 2 Q_d.
Mat12 hessian_P(const Vec12& v);

/// A direction d = (a, b, c) normalized to |d| = sqrt(3).
class Direction {
 public:
  /// Validates |d|^2 == 3 within 1e-12; throws std::invalid_argument.
  static Direction from_sqrt3(const Vec12& d);
  /// Rescales a nonzero vector to norm sqrt(3).
  static Direction normalized(const Vec12& v);

  const Vec12& vec() const { return d_; }
  Vec4 a() const { return block(d_, 0); }
  Vec4 b() const { return block(d_, 1); }
  Vec4 c() const { return block(d_, 2); }
  /// |a||b||c|
  double m() const { return m_; }
  /// P(a, b, c)
  double n() const { return n_; }

 private:
  explicit Direction(const Vec12& d);
  Vec12 d_;
  double m_ = 0.0;
  double n_ = 0.0;
};

/// Ordered spectrum of 2 Q_d. Eigenvectors have norm sqrt(3) with (v, d) >= 0.
struct SpectralReport {
  Vec12 values;   // descending
  Mat12 vectors;  // column i pairs with values(i)
  Direction direction;

  /// 1-based access matching the usual lambda_1 >= ... >= lambda_12.
  double lambda(int i) const { return values(i - 1); }
  Vec12 v(int i) const { return vectors.col(i - 1); }
};

Mat12 matrix_2Qd(const Direction& d);
SpectralReport spectral_report(const Direction& d);

/// (x^3 - 3x + 2m)(x^3 - 3x - 2m)(x^3 - 3x + 2n)^2
Polynomial char_poly_CHd(const Direction& d);

/// Cosine form of the twelve roots of char_poly_CHd, sorted descending.
std::array<double, 12> spectrum_closed_form(const Direction& d);

/// 2 >= l1 >= l4 >= 1, -1 >= l9 >= l12 >= -2, l1 >= sqrt(3), l12 <= -sqrt(3),
/// each with `slack`.
bool verify_cor2(const SpectralReport& report, double slack = 1e-9);

struct PerpExtremes {
  double plus = 0.0;
  double minus = 0.0;
};

/// Extreme eigenvalues of 2 Q_d restricted to the hyperplane d-perp.
PerpExtremes lambda_perp(const Direction& d);

/// Orthonormal basis (12 x 11) of the orthogonal complement of a nonzero vector.
Eigen::Matrix<double, 12, 11> orthogonal_complement(const Vec12& v);

struct CubicRootsCheck {
  std::array<double, 3> roots{};  // descending
  bool part1 = true;  // 0 <= m <= 1: 2 >= x1 >= sqrt3, x3 <= -1, equality cases force m = 1
  bool part2 = true;  // -1 <= m <= 0: mirror image
  bool part3 = true;  // |m| <= 0.75: |x1|, |x3| > 1.38
  bool all() const { return part1 && part2 && part3; }
};

/// Roots of x^3 - 3x - 2m by the trigonometric formula and the three root
/// bounds that feed the spectral corollaries. Parts whose hypothesis on m does
/// not apply report true. Throws std::domain_error for |m| > 1.
CubicRootsCheck cubic_roots_check(double m);

struct Cor4Result {
  double difference = 0.0;   // P(u) - P(v)
  double upper_bound = 0.0;  // 3 sqrt3 lambda_3(d) |u - v| / 4
  double lower_bound = 0.0;  // 3 sqrt3 lambda_10(d) |u - v| / 4
  bool upper_ok = false;
  bool lower_ok = false;
  bool ok() const { return upper_ok && lower_ok; }
};

/// Two-sided bound on P(u) - P(v) for u, v on the sphere of radius sqrt(3).
/// Throws std::invalid_argument for off-sphere inputs or |u - v| < 1e-9.
Cor4Result cor4_evaluate(const Vec12& u, const Vec12& v, double slack = 1e-9);
inline bool cor4_check(const Vec12& u, const Vec12& v, double slack = 1e-9) { return cor4_evaluate(u, v, slack).ok(); }

}  // namespace quatvisc
