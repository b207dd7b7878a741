#pragma once

#include "quatvisc/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace quatvisc {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over a string; used to give each sweep its own stream family.
constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Random source for one sample of one sweep. Any sample is reproducible from
/// (master seed, stream name, index) alone, independent of thread layout.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::string_view stream, std::uint64_t index)
      : engine_(splitmix64(splitmix64(seed ^ fnv1a64(stream)) + index)) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  template <int N>
  Eigen::Matrix<double, N, 1> gaussian() {
    Eigen::Matrix<double, N, 1> v;
    for (int i = 0; i < N; ++i) v(i) = normal();
    return v;
  }

  /// Uniform point on the sphere of the given radius in R^N.
  template <int N>
  Eigen::Matrix<double, N, 1> sphere(double radius = 1.0) {
    Eigen::Matrix<double, N, 1> v;
    double n = 0.0;
    do {
      v = gaussian<N>();
      n = v.norm();
    } while (n < 1e-8);
    return v * (radius / n);
  }

  /// Symmetric matrix with i.i.d. N(0,1) upper-triangle entries.
  template <int N>
  Eigen::Matrix<double, N, N> symmetric() {
    Eigen::Matrix<double, N, N> m;
    for (int i = 0; i < N; ++i) {
      for (int j = i; j < N; ++j) {
        m(i, j) = normal();
        m(j, i) = m(i, j);
      }
    }
    return m;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace quatvisc
