// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random streams. One master 64-bit seed; independent streams
// derived per (trial index, role) so trials are reproducible regardless of
// scheduling. Gaussian draws use an explicit Box-Muller transform on top of
// mt19937_64, so identical seeds give bit-identical values on any platform.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace gfmimo {

enum class RngRole : std::uint64_t {
  Channel = 1,
  Precoder = 2,
  Messages = 3,
  Noise = 4,
  Genie = 5,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  static RngStream derive(std::uint64_t master, std::uint64_t trial_index,
                          RngRole role) {
    using detail::splitmix64;
    const std::uint64_t s = splitmix64(
        splitmix64(master ^ 0x7f4a7c15ULL * static_cast<std::uint64_t>(role)) ^
        splitmix64(trial_index * 0x2545f4914f6cdd1dULL + 1));
    return RngStream{s};
  }

  /// Next substream (used e.g. for precoder regeneration attempts).
  RngStream fork() { return RngStream{detail::splitmix64(eng_()) ^ eng_()}; }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bit() { return (eng_() >> 63) != 0; }

  /// Uniform integer in [0, bound), rejection-sampled so it is unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

  /// Circularly-symmetric complex Gaussian, zero mean, unit variance.
  std::complex<double> cgauss() {
    // |z|^2 ~ Exp(1), phase uniform
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  /// Real standard normal N(0, 1).
  double gauss() { return cgauss().real() * std::numbers::sqrt2; }

  /// k distinct indices from [0, n), returned sorted.
  std::vector<int> sample_without_replacement(int n, int k) {
    // Floyd's algorithm
    std::vector<int> out;
    out.reserve(k);
    for (int j = n - k; j < n; ++j) {
      const int t = static_cast<int>(below(static_cast<std::uint64_t>(j) + 1));
      bool seen = false;
      for (int v : out)
        if (v == t) {
          seen = true;
          break;
        }
      out.push_back(seen ? j : t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gfmimo
