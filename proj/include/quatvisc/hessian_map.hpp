#pragma once

#include "quatvisc/cubic_form.hpp"
#include "quatvisc/sym_mat.hpp"
#include "quatvisc/types.hpp"

#include <cstdint>
#include <stdexcept>

namespace quatvisc {

// w(x) = P(x) / |x|, homogeneous of degree 2 and smooth away from the origin.
// Unit-sphere points here have norm 1; directions for the cubic form carry
// norm sqrt(3). Conversion between the two is always explicit.

/// Throws std::domain_error for |x| <= kDegenerateNorm.
double eval_w(const Vec12& x);
Vec12 grad_w(const Vec12& x);
/// D^2 P / r - (grad P x^T + x grad P^T) / r^3 - P I / r^3 + 3 P x x^T / r^5.
Mat12 hess_w(const Vec12& x);

/// Throws std::invalid_argument unless ||a| - 1| <= 1e-12.
void require_unit(const Vec12& a, const char* what);

/// The Hessian map restricted to the unit sphere.
SymMat12 H(const Vec12& a);

/// Eigenvalues mu_1 >= ... >= mu_12 of H(a) - H(b).
/// Throws std::invalid_argument when |a - b| < 1e-9.
Vec12 pair_spectrum(const Vec12& a, const Vec12& b);

struct Prop2Witness {
  Vec12 e;  // unit, in span(v1, v2, v3), orthogonal to a and b
  Vec12 f;  // unit, in span(v10, v11, v12), orthogonal to a and b
  double separation = 0.0;  // |a - b| / (4 sqrt 3)
  double gain_e = 0.0;      // w_ee(a) - w_ee(b)
  double gain_f = 0.0;      // w_ff(a) - w_ff(b)
  bool ok(double slack = 1e-9) const { return gain_e >= separation - slack && gain_f <= -separation + slack; }
};

/// Thrown when the witness subspace intersection is numerically empty. By a
/// dimension count (3 + 10 - 12 >= 1) this cannot happen for valid input.
class WitnessFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds witnesses e and f for the quantitative separation of H(a) and H(b).
/// The subspace intersection is the kernel of a 2x3 system solved by SVD.
Prop2Witness prop2_witness(const Vec12& a, const Vec12& b);

/// Third directional derivative w_efg(x), by central differences of hess_w
/// along g (step 1e-5).
double third_derivative(const Vec12& x, const Vec12& e, const Vec12& f, const Vec12& g, double step = 1e-5);

/// Largest |w_efg(x)| over `samples` random unit e, f, g, x.
double third_derivative_bound(std::size_t samples, std::uint64_t seed);

}  // namespace quatvisc
