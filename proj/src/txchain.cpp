// SPDX-License-Identifier: Apache-2.0

#include "gfmimo/txchain.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/QR>

namespace gfmimo {

namespace {

MatrixXcd gaussian_matrix(int rows, int cols, RngStream& rng) {
  MatrixXcd m(rows, cols);
  // column-major fill keeps the draw order independent of expression context
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = rng.cgauss();
  return m;
}

}  // namespace

ChannelState gen_channel(int n_antennas, int n_users, RngStream& rng) {
  if (n_antennas < 1 || n_users < 1)
    throw std::invalid_argument("gen_channel: dimensions must be >= 1");
  return ChannelState{gaussian_matrix(n_antennas, n_users, rng)};
}

NoiseRealization gen_noise(int n_antennas, int frame_len, RngStream& rng) {
  return NoiseRealization{gaussian_matrix(n_antennas, frame_len, rng)};
}

PrecoderBank gen_precoders(const SystemConfig& cfg, RngStream& rng) {
  const int T = cfg.frame_len, d = cfg.msg_len;
  PrecoderBank bank;
  bank.kind = cfg.precoder_kind;
  bank.mats.reserve(cfg.n_online);
  for (int n = 0; n < cfg.n_online; ++n) {
    MatrixXcd P;
    bool ok = false;
    RngStream sub = rng;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      if (attempt > 0) sub = rng.fork();
      const MatrixXcd A = gaussian_matrix(T, d, attempt == 0 ? rng : sub);
      if (cfg.precoder_kind == PrecoderKind::OrthonormalColumns) {
        Eigen::HouseholderQR<MatrixXcd> qr(A);
        P = qr.householderQ() * MatrixXcd::Identity(T, d);
        // fix column phases so the result is unique given the draw
        for (int c = 0; c < d; ++c) {
          const cplx r = qr.matrixQR()(c, c);
          if (std::abs(r) > 0.0) P.col(c) *= r / std::abs(r);
        }
      } else {
        P = A;
        for (int c = 0; c < d; ++c) {
          const double nrm = P.col(c).norm();
          if (nrm > 0.0) P.col(c) /= nrm;
        }
      }
      ok = (P.colPivHouseholderQr().rank() == d);
    }
    if (!ok)
      throw std::runtime_error("gen_precoders: rank-deficient precoder after 3 attempts");
    bank.mats.push_back(std::move(P));
  }
  return bank;
}

VectorXcd modulate_qpsk(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 2 != 0)
    throw std::invalid_argument("modulate_qpsk: odd bit count");
  const double a = 1.0 / std::numbers::sqrt2;
  VectorXcd out(static_cast<Eigen::Index>(bits.size() / 2));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double re = bits[2 * i] ? -a : a;
    const double im = bits[2 * i + 1] ? -a : a;
    out[i] = cplx{re, im};
  }
  return out;
}

std::vector<std::uint8_t> demodulate_qpsk(const VectorXcd& symbols) {
  std::vector<std::uint8_t> bits(2 * symbols.size());
  for (Eigen::Index i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = symbols[i].real() < 0.0 ? 1 : 0;
    bits[2 * i + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

MessageFrame gen_messages(const SystemConfig& cfg, RngStream& rng,
                          const std::optional<std::vector<int>>& msg_bit_lengths) {
  const int d = cfg.msg_len;
  MessageFrame frame;
  frame.active_set = rng.sample_without_replacement(cfg.n_online, cfg.n_active);
  frame.symbols.assign(cfg.n_online, VectorXcd::Zero(d));
  frame.bits.reserve(cfg.n_active);
  if (msg_bit_lengths && static_cast<int>(msg_bit_lengths->size()) != cfg.n_active)
    throw std::invalid_argument("gen_messages: msg_bit_lengths size != n_active");
  for (int k = 0; k < cfg.n_active; ++k) {
    int nbits = 2 * d;
    if (msg_bit_lengths) {
      nbits = (*msg_bit_lengths)[k];
      if (nbits < 0 || nbits > 2 * d || nbits % 2 != 0)
        throw std::invalid_argument("gen_messages: bad per-user bit length");
    }
    std::vector<std::uint8_t> bits(nbits);
    for (auto& b : bits) b = rng.bit() ? 1 : 0;
    const VectorXcd sym = modulate_qpsk(bits);
    VectorXcd s = VectorXcd::Zero(d);  // zero-padded to d before precoding
    s.head(sym.size()) = sym;
    frame.symbols[frame.active_set[k]] = s;
    frame.bits.push_back(std::move(bits));
  }
  return frame;
}

ReceivedFrame transmit(const SystemConfig& cfg, const ChannelState& channel,
                       const PrecoderBank& precoders, const MessageFrame& messages,
                       const NoiseRealization& noise) {
  const int M = cfg.n_antennas, T = cfg.frame_len, d = cfg.msg_len;
  if (channel.n_antennas() != M || channel.n_users() != cfg.n_online ||
      precoders.frame_len() != T || precoders.msg_len() != d ||
      static_cast<int>(precoders.mats.size()) != cfg.n_online ||
      static_cast<int>(messages.symbols.size()) != cfg.n_online ||
      noise.z.rows() != M || noise.z.cols() != T)
    throw std::invalid_argument("transmit: dimension mismatch");

  MatrixXcd y = noise.z;
  const double amp = std::sqrt(cfg.rho0());
  for (int n : messages.active_set) {
    const VectorXcd x = precoders.mats[n] * messages.symbols[n];  // T
    y.noalias() += amp * channel.h.col(n) * x.transpose();
  }
  return ReceivedFrame{std::move(y)};
}

}  // namespace gfmimo
