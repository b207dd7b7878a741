#pragma once

#include "quatvisc/sym_mat.hpp"
#include "quatvisc/types.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace quatvisc {

/// Aperture of the cone K_lambda = {a : spectrum of a lies in [C/lambda, C lambda], C > 0}.
class ConeParams {
 public:
  /// Throws std::invalid_argument unless lambda >= 1.
  explicit ConeParams(double lambda);
  double lambda() const { return lambda_; }
  double lambda2() const { return lambda_ * lambda_; }
  static constexpr int dimension = kDim;

 private:
  double lambda_;
};

/// Sum of positive eigenvalues (p) and of |negative| eigenvalues (q).
struct SignedMass {
  double positive = 0.0;
  double negative = 0.0;
};
SignedMass signed_mass(const Vec12& eigenvalues);

/// Positive definite with max/min eigenvalue ratio <= lambda^2.
bool in_K(const SymMat12& mat, const ConeParams& cone);

/// Dual cone membership. The minimum of trace(b c) over c in K_lambda is
/// C (p / lambda - lambda q), so b is in K*_lambda iff p >= lambda^2 q.
bool in_K_star(const SymMat12& mat, const ConeParams& cone);
bool in_K_star(const Vec12& eigenvalues, const ConeParams& cone);

/// Complement of K* and -K*: p < lambda^2 q and q < lambda^2 p.
bool in_L(const SymMat12& mat, const ConeParams& cone);
bool in_L(const Vec12& eigenvalues, const ConeParams& cone);

/// Sufficient test for in_L without an eigendecomposition. Uses
/// nuclear >= Frobenius: |trace| < |mat|_F (lambda^2 - 1) / (lambda^2 + 1).
/// A false result means "undecided".
bool in_L_by_trace(double trace, double frobenius, const ConeParams& cone);

/// x(z) = inf { c : a + c I/sqrt(12) in K* }, a the traceless matrix with
/// coordinates z. Measured in the same units as the s coordinate. Found by
/// bisection on the monotone dual-cone predicate.
double support_x(const Coords77& z, const ConeParams& cone);
double support_x(const Mat12& traceless, const ConeParams& cone);
/// Same, from the eigenvalues of the traceless matrix and its Frobenius norm.
double support_x_from_eigenvalues(const Vec12& eigenvalues, double frobenius, const ConeParams& cone);

/// Lower and upper bounds on x for a traceless matrix of Frobenius norm f:
/// k f / sqrt(12 - k^2) <= x <= sqrt(11) f with k = (lambda^2 - 1)/(lambda^2 + 1).
double support_x_lower_bound(double frobenius, const ConeParams& cone);
double support_x_upper_bound(double frobenius);

/// Lower bound from the test matrix k = I + (lambda^2 - 1) P_V in K_lambda, P_V an
/// orthogonal projection of rank r: x >= -sqrt(12) (lambda^2 - 1) tr(P_V a) / (12 + (lambda^2 - 1) r).
double support_x_projection_bound(double trace_projected, int rank, const ConeParams& cone);

struct ConeConditionReport {
  std::size_t pairs_checked = 0;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  bool pass() const { return violations.empty(); }
};

/// Checks a - b in L_lambda for every pair of the set. Requires >= 2 elements.
ConeConditionReport cone_condition(std::span<const SymMat12> set, const ConeParams& cone);

}  // namespace quatvisc
