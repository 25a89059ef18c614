// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include <doctest.h>

#include "gfmimo/guarantees.hpp"
#include "gfmimo/txchain.hpp"
#include "test_support.hpp"

using namespace gfmimo;
using namespace gfmimo::testsupport;

namespace {

/// Brute-force coherences straight from the dense matrix.
struct DenseCoh {
  double mu_block;
  double nu;
};

DenseCoh dense_coherences(const MatrixXcd& b, int n, int d) {
  double mu = 0.0, nu = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const MatrixXcd g = b.middleCols(static_cast<Eigen::Index>(i) * d, d).adjoint() *
                          b.middleCols(static_cast<Eigen::Index>(j) * d, d);
      Eigen::JacobiSVD<MatrixXcd> svd(g);
      mu = std::max(mu, svd.singularValues()(0) / d);
    }
  for (int u = 0; u < n; ++u) {
    const MatrixXcd g = b.middleCols(static_cast<Eigen::Index>(u) * d, d).adjoint() *
                        b.middleCols(static_cast<Eigen::Index>(u) * d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) nu = std::max(nu, std::abs(g(i, j)));
  }
  return {mu, nu};
}

}  // namespace

TEST_CASE("block coherence and sub-coherence match dense brute force") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto inst = make_instance(random_tiny_config(seed + 300));
    const BlockOperator op(inst.channel, inst.precoders, inst.cfg.rho0());
    const MatrixXcd b = dense_b_oracle(inst.channel, inst.precoders);
    const auto want = dense_coherences(b, inst.cfg.n_online, inst.cfg.msg_len);
    CHECK(block_coherence(op) == doctest::Approx(want.mu_block).epsilon(1e-9));
    CHECK(sub_coherence(op) == doctest::Approx(want.nu).epsilon(1e-9));
  }
}

TEST_CASE("orthonormal precoders give nu = 0") {
  auto cfg = random_tiny_config(33);
  cfg.precoder_kind = PrecoderKind::OrthonormalColumns;
  const auto inst = make_instance(cfg);
  const BlockOperator op(inst.channel, inst.precoders, cfg.rho0());
  CHECK(sub_coherence(op) <= 1e-10);
}

TEST_CASE("tau matches the dense maximum over blocks") {
  const auto inst = make_instance(random_tiny_config(44));
  const BlockOperator op(inst.channel, inst.precoders, inst.cfg.rho0());
  const MatrixXcd b = dense_b_oracle(inst.channel, inst.precoders);
  const VectorXcd z = Eigen::Map<const VectorXcd>(inst.noise.z.data(), inst.noise.z.size());
  double want = 0.0;
  const int d = inst.cfg.msg_len;
  for (int u = 0; u < inst.cfg.n_online; ++u)
    want = std::max(want,
                    (b.middleCols(static_cast<Eigen::Index>(u) * d, d).adjoint() * z).norm());
  CHECK(tau_of_noise(op, z) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("signal extremes over the active set") {
  const auto inst = make_instance(random_tiny_config(55));
  const auto [lo, hi] = signal_extremes(inst.messages);
  // unit-energy QPSK symbols: every active block has norm sqrt(d)
  CHECK(lo == doctest::Approx(std::sqrt(static_cast<double>(inst.cfg.msg_len))));
  CHECK(hi == doctest::Approx(lo));
  MessageFrame empty;
  empty.symbols.resize(3, VectorXcd::Zero(2));
  CHECK_THROWS_AS((void)signal_extremes(empty), std::invalid_argument);
}

TEST_CASE("with mu_B = nu = 0 the support condition reduces to the Remark form") {
  RngStream r(1234);
  for (int rep = 0; rep < 10; ++rep) {
    CoherenceReport rep9;
    rep9.mu_block = 0.0;
    rep9.sub_coherence = 0.0;
    rep9.s_min = 0.5 + 4.0 * r.uniform();
    rep9.tau = 5.0 * r.uniform();
    const double rho0 = 0.1 + 10.0 * r.uniform();
    const int m = 2 + static_cast<int>(r.below(8));
    const int d = 2 + static_cast<int>(r.below(200));
    const int na = 1 + static_cast<int>(r.below(24));
    const int k = na + static_cast<int>(r.below(8));
    const auto v = check_theorem1(rep9, rho0, m, d, na, k);
    const double sl = rep9.s_min;
    CHECK(v.lhs9 == rho0 * m * sl * sl);
    CHECK(v.rhs9 == rep9.tau * rep9.tau +
                        2.0 * std::sqrt(rho0 * m) * rep9.tau * sl);
    CHECK(v.bound10_denominator == 1.0);
    REQUIRE(v.bound10.has_value());
    CHECK(*v.bound10 == doctest::Approx(k * rep9.tau * rep9.tau / (rho0 * m)));
  }
}

TEST_CASE("the error bound becomes inapplicable when the denominator is nonpositive") {
  CoherenceReport rep;
  rep.mu_block = 0.5;  // with d = 4, K = 2: 1 - 1*(K-1)*d*mu = 1 - 2 = -1
  rep.sub_coherence = 0.0;
  rep.s_min = 1.0;
  rep.tau = 1.0;
  const auto v = check_theorem1(rep, 1.0, 2, 4, 1, 2);
  CHECK(v.bound10_denominator < 0.0);
  CHECK(!v.bound10.has_value());
}

TEST_CASE("max_allowed_active is consistent with the pointwise checker") {
  const auto inst = make_instance(random_tiny_config(66));
  const BlockOperator op(inst.channel, inst.precoders, inst.cfg.rho0());
  const VectorXcd z = Eigen::Map<const VectorXcd>(inst.noise.z.data(), inst.noise.z.size());
  const auto rep = coherence_report(op, inst.messages, z);
  const int max_na = max_allowed_active(rep, inst.cfg.rho0(), inst.cfg.n_antennas,
                                        inst.cfg.msg_len, inst.cfg.bomp_iters,
                                        inst.cfg.n_online);
  for (int na = 1; na <= inst.cfg.n_online; ++na) {
    const auto v = check_theorem1(rep, inst.cfg.rho0(), inst.cfg.n_antennas,
                                  inst.cfg.msg_len, na, inst.cfg.bomp_iters);
    if (na <= max_na)
      CHECK(v.condition9_holds);
    else if (na == max_na + 1)
      CHECK(!v.condition9_holds);
  }
}

TEST_CASE("information lower bound on the message bits") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  // log2 C(4,2) + (1+1) = log2 6 + 2
  CHECK(info_bits_lower(4, 2, {1.0, 1.0}) ==
        doctest::Approx(std::log2(6.0) + 2.0).epsilon(1e-12));
  CHECK(info_bits_lower(80, 24, std::vector<double>(24, 400.0)) > 9600.0);
}

TEST_CASE("theorem 2 rhs: small-dimension form equals the full-dimension determinant") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = make_instance(random_tiny_config(seed + 500));
    const BlockOperator op(inst.channel, inst.precoders, inst.cfg.rho0());
    const MatrixXcd b = dense_b_oracle(inst.channel, inst.precoders);
    const int d = inst.cfg.msg_len;
    MatrixXcd bi(op.rows(), static_cast<Eigen::Index>(inst.messages.active_set.size()) * d);
    for (std::size_t k = 0; k < inst.messages.active_set.size(); ++k)
      bi.middleCols(static_cast<Eigen::Index>(k) * d, d) =
          b.middleCols(static_cast<Eigen::Index>(inst.messages.active_set[k]) * d, d);
    const MatrixXcd big = MatrixXcd::Identity(op.rows(), op.rows()) +
                          inst.cfg.rho0() * (bi * bi.adjoint());
    const double want = std::log2(big.determinant().real());
    const double got = theorem2_rhs(0.0, inst.cfg.rho0(), op, inst.messages.active_set);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("theorem 2 rhs is monotone in rho0 and zero at rho0 = 0") {
  const auto inst = make_instance(random_tiny_config(510));
  const BlockOperator op(inst.channel, inst.precoders, inst.cfg.rho0());
  CHECK(theorem2_rhs(0.0, 0.0, op, inst.messages.active_set) == doctest::Approx(0.0));
  double prev = -1.0;
  for (int i = 0; i < 10; ++i) {
    const double rho0 = 0.3 * (i + 1);
    const double v = theorem2_rhs(0.0, rho0, op, inst.messages.active_set);
    CHECK(v >= prev);
    prev = v;
  }
  // p_e > 0 adds the entropy term and the 1/(1-p_e) stretch.
  const double v0 = theorem2_rhs(0.0, 1.0, op, inst.messages.active_set);
  const double vp = theorem2_rhs(0.1, 1.0, op, inst.messages.active_set);
  CHECK(vp == doctest::Approx((binary_entropy(0.1) + v0) / 0.9));
}
