// SPDX-License-Identifier: Apache-2.0
//
// Transmit chain: channel / precoder / message generation and the forward
// model Y = sqrt(rho0) * sum_{n in I} h_n (P_n s_n)^T + Z.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gfmimo/rng.hpp"
#include "gfmimo/types.hpp"

namespace gfmimo {

ChannelState gen_channel(int n_antennas, int n_users, RngStream& rng);

NoiseRealization gen_noise(int n_antennas, int frame_len, RngStream& rng);

/// OrthonormalColumns: QR-orthonormalized complex Gaussian draw.
/// NormalizedGaussian: column-normalized complex Gaussian draw.
/// Rank-deficient draws are regenerated from the next substream (at most 3
/// attempts) before failing.
PrecoderBank gen_precoders(const SystemConfig& cfg, RngStream& rng);

/// Uniformly random active set of size N_a; 2d uniform bits per active user
/// mapped to d QPSK symbols; inactive users all-zero. If msg_bit_lengths is
/// given (per active user, each <= 2d and even), shorter messages are
/// zero-padded to d symbols before precoding.
MessageFrame gen_messages(const SystemConfig& cfg, RngStream& rng,
                          const std::optional<std::vector<int>>& msg_bit_lengths =
                              std::nullopt);

/// Gray map: bit pair (b0, b1) -> ((1-2 b0) + j (1-2 b1)) / sqrt(2).
VectorXcd modulate_qpsk(const std::vector<std::uint8_t>& bits);

/// Nearest-constellation-point decision. Ties on the axes (zero real or
/// imaginary part) resolve toward the (+,+) quadrant, i.e. bit 0.
std::vector<std::uint8_t> demodulate_qpsk(const VectorXcd& symbols);

/// Forward model of the received frame (matrix form).
ReceivedFrame transmit(const SystemConfig& cfg, const ChannelState& channel,
                       const PrecoderBank& precoders, const MessageFrame& messages,
                       const NoiseRealization& noise);

}  // namespace gfmimo
