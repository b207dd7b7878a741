#pragma once

#include "quatvisc/types.hpp"

#include <cstdint>
#include <string_view>

namespace quatvisc {

// Orthonormal coordinates on the space of symmetric 12x12 matrices under the
// trace inner product <a, b> = trace(ab).
//
//   s           coefficient of I / sqrt(12)             (so sqrt(12) s = trace)
//   z[0..10]    traceless diagonal part, Helmert basis:
//               z[k-1] <-> diag(1, ..., 1, -k, 0, ..., 0) / sqrt(k (k + 1)),
//               with k ones, k = 1..11
//   z[11..76]   off-diagonal part, (E_ij + E_ji) / sqrt(2) for i < j in
//               lexicographic order (0,1), (0,2), ..., (10,11)
//
// The layout is frozen: cached Sigma samples record basis_version_hash().

/// Symmetric 12x12 matrix with (z, s) coordinate access.
class SymMat12 {
 public:
  SymMat12() : m_(Mat12::Zero()) {}
  /// Stores the symmetric part (m + m^T) / 2.
  explicit SymMat12(const Mat12& m) : m_(0.5 * (m + m.transpose())) {}

  static SymMat12 identity() { return SymMat12(Mat12::Identity()); }
  static SymMat12 from_coords(const Coords77& z, double s);

  const Mat12& matrix() const { return m_; }
  double trace() const { return m_.trace(); }
  double s() const;
  Coords77 z() const;

  /// trace(this * other)
  double dot(const SymMat12& other) const { return m_.cwiseProduct(other.m_).sum(); }
  double norm() const { return m_.norm(); }

  /// Eigenvalues in descending order (Jacobi).
  Vec12 eigenvalues() const;

  SymMat12 operator+(const SymMat12& o) const { return SymMat12(m_ + o.m_, Raw{}); }
  SymMat12 operator-(const SymMat12& o) const { return SymMat12(m_ - o.m_, Raw{}); }
  SymMat12 operator-() const { return SymMat12(-m_, Raw{}); }
  friend SymMat12 operator*(double t, const SymMat12& a) { return SymMat12(t * a.m_, Raw{}); }

 private:
  struct Raw {};
  SymMat12(const Mat12& m, Raw) : m_(m) {}
  Mat12 m_;
};

/// Traceless matrix with coordinates z (s = 0).
Mat12 traceless_matrix(const Coords77& z);

/// The k-th traceless basis element, k in [0, 77).
Mat12 basis_element(int k);

std::string_view basis_description();
std::uint64_t basis_version_hash();

}  // namespace quatvisc
