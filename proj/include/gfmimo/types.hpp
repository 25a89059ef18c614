// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gfmimo/config.hpp"

namespace gfmimo {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

/// M x N channel matrix; column n is h_n, the channel of user n.
struct ChannelState {
  MatrixXcd h;

  int n_antennas() const { return static_cast<int>(h.rows()); }
  int n_users() const { return static_cast<int>(h.cols()); }
};

/// N precoding matrices, each T x d with unit-energy columns.
struct PrecoderBank {
  PrecoderKind kind = PrecoderKind::OrthonormalColumns;
  std::vector<MatrixXcd> mats;

  int frame_len() const { return mats.empty() ? 0 : static_cast<int>(mats[0].rows()); }
  int msg_len() const { return mats.empty() ? 0 : static_cast<int>(mats[0].cols()); }
};

/// One frame's worth of user messages. symbols[n] is s_n (all-zero for
/// inactive users). bits[k] holds the 2*d transmitted bits of the k-th
/// active user, aligned with active_set order.
struct MessageFrame {
  std::vector<VectorXcd> symbols;
  std::vector<int> active_set;  // sorted
  std::vector<std::vector<std::uint8_t>> bits;

  bool is_active(int n) const {
    for (int a : active_set)
      if (a == n) return true;
    return false;
  }
};

/// i.i.d. CN(0,1) additive noise, M x T.
struct NoiseRealization {
  MatrixXcd z;
};

struct ReceivedFrame {
  MatrixXcd y_mat;  // M x T

  /// vec(Y): column-stacking, length M*T.
  VectorXcd y_vec() const {
    return Eigen::Map<const VectorXcd>(y_mat.data(), y_mat.size());
  }
};

}  // namespace gfmimo
