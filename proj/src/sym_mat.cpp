#include "quatvisc/sym_mat.hpp"

#include "quatvisc/jacobi.hpp"
#include "quatvisc/sampling.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace quatvisc {

namespace {

constexpr int kDiagCoords = kDim - 1;

// helmert(k)[i] for the k-th (1-based) traceless diagonal direction.
double helmert(int k, int i) {
  const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
  if (i < k) return 1.0 / norm;
  if (i == k) return -static_cast<double>(k) / norm;
  return 0.0;
}

struct OffDiagonalIndex {
  std::array<std::array<int, 2>, kTracelessDim - kDiagCoords> pairs{};
  OffDiagonalIndex() {
    int idx = 0;
    for (int i = 0; i < kDim; ++i) {
      for (int j = i + 1; j < kDim; ++j) pairs[idx++] = {i, j};
    }
  }
};

const OffDiagonalIndex& off_diagonal() {
  static const OffDiagonalIndex table;
  return table;
}

}  // namespace

double SymMat12::s() const { return m_.trace() / std::sqrt(static_cast<double>(kDim)); }

Coords77 SymMat12::z() const {
  Coords77 z;
  // Helmert coordinates via running prefix sums of the diagonal.
  double prefix = 0.0;
  for (int k = 1; k <= kDiagCoords; ++k) {
    prefix += m_(k - 1, k - 1);
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    z(k - 1) = (prefix - k * m_(k, k)) / norm;
  }
  const double root2 = std::sqrt(2.0);
  const auto& pairs = off_diagonal().pairs;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    z(kDiagCoords + static_cast<int>(idx)) = root2 * m_(pairs[idx][0], pairs[idx][1]);
  }
  return z;
}

Mat12 traceless_matrix(const Coords77& z) {
  Mat12 m = Mat12::Zero();
  for (int k = 1; k <= kDiagCoords; ++k) {
    const double c = z(k - 1);
    if (c == 0.0) continue;
    for (int i = 0; i <= k; ++i) m(i, i) += c * helmert(k, i);
  }
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  const auto& pairs = off_diagonal().pairs;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const double v = z(kDiagCoords + static_cast<int>(idx)) * inv_root2;
    m(pairs[idx][0], pairs[idx][1]) = v;
    m(pairs[idx][1], pairs[idx][0]) = v;
  }
  return m;
}

SymMat12 SymMat12::from_coords(const Coords77& z, double s) {
  Mat12 m = traceless_matrix(z);
  m.diagonal().array() += s / std::sqrt(static_cast<double>(kDim));
  return SymMat12(m, Raw{});
}

Vec12 SymMat12::eigenvalues() const { return jacobi_eigenvalues<kDim>(m_); }

Mat12 basis_element(int k) {
  if (k < 0 || k >= kTracelessDim) throw std::out_of_range("basis_element: index out of range");
  Coords77 z = Coords77::Zero();
  z(k) = 1.0;
  return traceless_matrix(z);
}

std::string_view basis_description() {
  return "sym12/v1: s=I/sqrt12; z[0..10]=helmert diag(1..1,-k,0..)/sqrt(k(k+1)); "
         "z[11..76]=(Eij+Eji)/sqrt2 lexicographic i<j";
}

std::uint64_t basis_version_hash() { return fnv1a64(basis_description()); }

}  // namespace quatvisc
