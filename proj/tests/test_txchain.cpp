// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include <doctest.h>

#include "gfmimo/txchain.hpp"
#include "test_support.hpp"

using namespace gfmimo;
using testsupport::make_instance;

TEST_CASE("qpsk gray map hits the four constellation points") {
  const double q = 1.0 / std::sqrt(2.0);
  const auto s = modulate_qpsk({0, 0, 0, 1, 1, 0, 1, 1});
  REQUIRE(s.size() == 4);
  CHECK(s(0) == cplx(q, q));
  CHECK(s(1) == cplx(q, -q));
  CHECK(s(2) == cplx(-q, q));
  CHECK(s(3) == cplx(-q, -q));
  for (int i = 0; i < 4; ++i) CHECK(std::abs(s(i)) == doctest::Approx(1.0));
}

TEST_CASE("qpsk modulate/demodulate round trip") {
  RngStream r(11);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<std::uint8_t> bits(64);
    for (auto& b : bits) b = r.bit() ? 1 : 0;
    CHECK(demodulate_qpsk(modulate_qpsk(bits)) == bits);
  }
}

TEST_CASE("demodulation ties on the axes resolve to bit 0") {
  VectorXcd s(3);
  s << cplx(0.0, 0.0), cplx(0.0, -1.0), cplx(-1.0, 0.0);
  const auto bits = demodulate_qpsk(s);
  CHECK(bits == std::vector<std::uint8_t>{0, 0, 0, 1, 1, 0});
}

TEST_CASE("orthonormal precoders have orthonormal columns") {
  SystemConfig cfg = testsupport::random_tiny_config(5);
  cfg.precoder_kind = PrecoderKind::OrthonormalColumns;
  RngStream r = RngStream::derive(cfg.seed, 0, RngRole::Precoder);
  const auto bank = gen_precoders(cfg, r);
  REQUIRE(static_cast<int>(bank.mats.size()) == cfg.n_online);
  for (const auto& p : bank.mats) {
    REQUIRE(p.rows() == cfg.frame_len);
    REQUIRE(p.cols() == cfg.msg_len);
    const MatrixXcd gram = p.adjoint() * p;
    CHECK((gram - MatrixXcd::Identity(cfg.msg_len, cfg.msg_len)).norm() < 1e-12);
  }
}

TEST_CASE("gaussian precoders have unit-energy, generally non-orthogonal columns") {
  SystemConfig cfg = testsupport::random_tiny_config(6);
  cfg.precoder_kind = PrecoderKind::NormalizedGaussian;
  cfg.msg_len = 4;
  cfg.frame_len = 12;
  RngStream r = RngStream::derive(cfg.seed, 0, RngRole::Precoder);
  const auto bank = gen_precoders(cfg, r);
  double max_offdiag = 0.0;
  for (const auto& p : bank.mats) {
    for (int j = 0; j < p.cols(); ++j)
      CHECK(p.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
    const MatrixXcd gram = p.adjoint() * p;
    for (int i = 0; i < gram.rows(); ++i)
      for (int j = 0; j < gram.cols(); ++j)
        if (i != j) max_offdiag = std::max(max_offdiag, std::abs(gram(i, j)));
  }
  CHECK(max_offdiag > 1e-3);
}

TEST_CASE("message frames: sorted active set, unit-energy symbols, silent inactive users") {
  SystemConfig cfg = testsupport::random_tiny_config(7);
  RngStream r = RngStream::derive(cfg.seed, 0, RngRole::Messages);
  const auto mf = gen_messages(cfg, r);
  REQUIRE(static_cast<int>(mf.active_set.size()) == cfg.n_active);
  REQUIRE(static_cast<int>(mf.symbols.size()) == cfg.n_online);
  REQUIRE(mf.bits.size() == mf.active_set.size());
  for (std::size_t i = 1; i < mf.active_set.size(); ++i)
    CHECK(mf.active_set[i - 1] < mf.active_set[i]);
  for (int u = 0; u < cfg.n_online; ++u) {
    REQUIRE(mf.symbols[u].size() == cfg.msg_len);
    if (mf.is_active(u))
      for (int j = 0; j < cfg.msg_len; ++j)
        CHECK(std::abs(mf.symbols[u](j)) == doctest::Approx(1.0));
    else
      CHECK(mf.symbols[u].norm() == 0.0);
  }
  for (const auto& b : mf.bits) CHECK(static_cast<int>(b.size()) == 2 * cfg.msg_len);
}

TEST_CASE("short messages are zero-padded after their bits run out") {
  SystemConfig cfg = testsupport::random_tiny_config(8);
  cfg.n_active = 2;
  cfg.msg_len = 4;
  RngStream r = RngStream::derive(cfg.seed, 0, RngRole::Messages);
  const auto mf = gen_messages(cfg, r, std::vector<int>{4, 8});
  const int u0 = mf.active_set[0];
  CHECK(std::abs(mf.symbols[u0](0)) == doctest::Approx(1.0));
  CHECK(std::abs(mf.symbols[u0](1)) == doctest::Approx(1.0));
  CHECK(mf.symbols[u0](2) == cplx(0.0, 0.0));
  CHECK(mf.symbols[u0](3) == cplx(0.0, 0.0));
  CHECK(mf.bits[0].size() == 4);
  CHECK(mf.bits[1].size() == 8);
}

TEST_CASE("transmit matches an explicit sum over active users") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = make_instance(testsupport::random_tiny_config(seed));
    const auto rx = transmit(inst.cfg, inst.channel, inst.precoders,
                             inst.messages, inst.noise);
    MatrixXcd expected = inst.noise.z;
    const double amp = std::sqrt(inst.cfg.rho0());
    for (int u : inst.messages.active_set)
      expected += amp * inst.channel.h.col(u) *
                  (inst.precoders.mats[u] * inst.messages.symbols[u]).transpose();
    REQUIRE(rx.y_mat.rows() == inst.cfg.n_antennas);
    REQUIRE(rx.y_mat.cols() == inst.cfg.frame_len);
    CHECK((rx.y_mat - expected).norm() <= 1e-12 * expected.norm());
  }
}

TEST_CASE("y_vec is the column-stacking of the received matrix") {
  const auto inst = make_instance(testsupport::random_tiny_config(3));
  const auto rx = transmit(inst.cfg, inst.channel, inst.precoders,
                           inst.messages, inst.noise);
  const auto v = rx.y_vec();
  REQUIRE(v.size() == rx.y_mat.size());
  for (int tt = 0; tt < rx.y_mat.cols(); ++tt)
    for (int a = 0; a < rx.y_mat.rows(); ++a)
      CHECK(v(static_cast<Eigen::Index>(tt) * rx.y_mat.rows() + a) == rx.y_mat(a, tt));
}
