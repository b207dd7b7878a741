#include "quatvisc/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quatvisc {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) { trim(); }

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

Polynomial Polynomial::from_roots(std::span<const double> roots) {
  Polynomial out{1.0};
  for (double r : roots) out = out * Polynomial{-r, 1.0};
  return out;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{0.0};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<double> out(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
  Polynomial out{1.0};
  for (int i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

std::vector<std::complex<double>> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  const double lead = coeffs_.back();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[i] / lead;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Polynomial::roots: eigensolver failed");

  const Polynomial dp = derivative();
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = solver.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      const auto fz = (*this)(z);
      const auto dz = dp(z);
      if (std::abs(dz) == 0.0) break;
      const auto step = fz / dz;
      // Newton is only trusted when it shrinks the residual.
      const auto candidate = z - step;
      if (std::abs((*this)(candidate)) >= std::abs(fz)) break;
      z = candidate;
    }
    out.push_back(z);
  }
  return out;
}

std::vector<double> Polynomial::real_roots_descending() const {
  std::vector<double> out;
  for (const auto& z : roots()) out.push_back(z.real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double Polynomial::max_relative_difference(const Polynomial& other) const {
  const int n = std::max(degree(), other.degree());
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double a = coeff(k);
    const double b = other.coeff(k);
    worst = std::max(worst, std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
  }
  return worst;
}

std::vector<double> depressed_cubic_real_roots(double p, double q) {
  const Polynomial cubic{q, p, 0.0, 1.0};
  const auto all = cubic.roots();
  auto largest = std::max_element(all.begin(), all.end(),
                                  [](const auto& a, const auto& b) { return std::abs(a) < std::abs(b); });
  double r = largest->real();
  const Polynomial dp = cubic.derivative();
  for (int it = 0; it < 8; ++it) {
    const double d = dp(r);
    if (d == 0.0) break;
    const double next = r - cubic(r) / d;
    if (next == r) break;
    r = next;
  }
  // Synthetic division: x^3 + p x + q = (x - r)(x^2 + r x + (p + r^2)).
  const double b = r;
  const double c = p + r * r;
  const double disc = std::max(0.0, b * b - 4.0 * c);
  const double sq = std::sqrt(disc);
  // Numerically stable quadratic roots.
  double r1;
  double r2;
  if (sq == 0.0) {
    r1 = r2 = -b / 2.0;
  } else {
    const double t = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    r1 = t;
    r2 = c / t;
  }
  std::vector<double> out{r, r1, r2};
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace quatvisc
