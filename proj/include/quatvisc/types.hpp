#pragma once

#include <Eigen/Core>

namespace quatvisc {

inline constexpr int kDim = 12;
/// Dimension of the traceless coordinate space of 12x12 symmetric matrices.
inline constexpr int kTracelessDim = kDim * (kDim + 1) / 2 - 1;

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using Vec12 = Eigen::Matrix<double, kDim, 1>;
using Mat12 = Eigen::Matrix<double, kDim, kDim>;
using Coords77 = Eigen::Matrix<double, kTracelessDim, 1>;

// Norm threshold below which a vector counts as zero.
inline constexpr double kDegenerateNorm = 1e-12;

}  // namespace quatvisc
