// SPDX-License-Identifier: Apache-2.0

#include <set>

#include <doctest.h>

#include "gfmimo/rng.hpp"

using namespace gfmimo;

TEST_CASE("derived streams are reproducible and role-separated") {
  RngStream a = RngStream::derive(42, 7, RngRole::Channel);
  RngStream b = RngStream::derive(42, 7, RngRole::Channel);
  RngStream c = RngStream::derive(42, 7, RngRole::Noise);
  RngStream d = RngStream::derive(42, 8, RngRole::Channel);
  bool same = true, diff_role = false, diff_trial = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    same &= (va == b.next_u64());
    diff_role |= (va != c.next_u64());
    diff_trial |= (va != d.next_u64());
  }
  CHECK(same);
  CHECK(diff_role);
  CHECK(diff_trial);
}

TEST_CASE("uniform stays in [0,1) and below() stays in range") {
  RngStream r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < 10000; ++i) CHECK(r.below(7) < 7);
}

TEST_CASE("complex gaussian has the right first and second moments") {
  RngStream r(2);
  const int n = 200000;
  std::complex<double> mean{};
  double pow2 = 0.0, re2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto z = r.cgauss();
    mean += z;
    pow2 += std::norm(z);
    re2 += z.real() * z.real();
  }
  mean /= static_cast<double>(n);
  pow2 /= n;
  re2 /= n;
  CHECK(std::abs(mean) < 0.01);
  CHECK(pow2 == doctest::Approx(1.0).epsilon(0.02));
  CHECK(re2 == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("real gaussian is standardized") {
  RngStream r(3);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = r.gauss();
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sample_without_replacement: sorted, distinct, full-range coverage") {
  RngStream r(4);
  std::set<int> seen;
  for (int rep = 0; rep < 2000; ++rep) {
    const auto s = r.sample_without_replacement(10, 4);
    REQUIRE(s.size() == 4);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1] < s[i]);
    for (int v : s) {
      CHECK(v >= 0);
      CHECK(v < 10);
      seen.insert(v);
    }
  }
  CHECK(seen.size() == 10);

  const auto all = r.sample_without_replacement(5, 5);
  CHECK(all == std::vector<int>{0, 1, 2, 3, 4});
}
