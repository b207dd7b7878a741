#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace quatvisc {

/// Real polynomial with coefficients in ascending degree order:
/// coeffs()[k] multiplies x^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);
  Polynomial(std::initializer_list<double> ascending);

  /// Monic polynomial prod (x - r_i).
  static Polynomial from_roots(std::span<const double> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const { return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0; }

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;
  Polynomial derivative() const;

  Polynomial operator*(const Polynomial& other) const;
  Polynomial pow(int exponent) const;

  /// All complex roots: eigenvalues of the companion matrix, each refined by
  /// a few Newton steps on the polynomial itself.
  std::vector<std::complex<double>> roots() const;

  /// Real parts of roots(), sorted descending. Intended for polynomials whose
  /// roots are known to be real.
  std::vector<double> real_roots_descending() const;

  /// Largest coefficient-wise difference, scaled by max(1, |c_k|) per entry.
  double max_relative_difference(const Polynomial& other) const;

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Roots of the depressed cubic x^3 + p x + q, known to have three real roots,
/// sorted descending. The largest-magnitude root is simple for this family, so
/// it is found first and deflated; the remaining quadratic is solved exactly.
/// This keeps exact double roots (e.g. x^3 - 3x - 2) exact.
std::vector<double> depressed_cubic_real_roots(double p, double q);

}  // namespace quatvisc
