#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace invmetric {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-sample generator: stream `index` of run seed `seed`. Two SampleRng
/// built from the same (seed, index) produce identical draws, so samples
/// can be generated in any order (or in parallel) without changing results.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index)
      : engine_(splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc909ULL) ^
                           splitmix64(index + 1))) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  std::complex<double> unit_complex() {
    const double t = uniform(0.0, 2.0 * M_PI);
    return {std::cos(t), std::sin(t)};
  }

  /// Uniform w.r.t. area on the disk of radius `radius`.
  std::complex<double> in_disk(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return r * unit_complex();
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Low-discrepancy point in [0,1)^dim (additive Kronecker sequence).
/// Used for range-containment sweeps; map parameters stay pseudo-random.
inline double kronecker01(std::uint64_t index, int coord) {
  static constexpr double alphas[] = {
      0.6180339887498949,  // 1/phi
      0.4142135623730951,  // sqrt(2)-1
      0.7320508075688772,  // sqrt(3)-1
      0.2360679774997896,  // sqrt(5)-2
      0.6457513110645906,  // sqrt(7)-2
      0.3166247903553998,  // sqrt(10)-3
      0.3588989435406740,  // sqrt(11)-3
      0.6055512754639891}; // sqrt(13)-3
  const double v = static_cast<double>(index + 1) * alphas[coord % 8];
  return v - std::floor(v);
}

}  // namespace invmetric
