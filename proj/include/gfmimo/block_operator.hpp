// SPDX-License-Identifier: Apache-2.0
//
// Implicit block sensing operator B = [B_1 ... B_N], B_n = (P_n (x) h_n)/sqrt(M),
// logical shape MT x Nd. Products are matrix-free; a dense materialization
// exists as a test oracle for small instances.

#pragma once

#include "gfmimo/types.hpp"

namespace gfmimo {

class BlockOperator {
 public:
  /// Keeps references; channel and precoders must outlive the operator.
  BlockOperator(const ChannelState& channel, const PrecoderBank& precoders,
                double rho0);

  int n_blocks() const { return n_; }
  int block_len() const { return d_; }
  int n_antennas() const { return m_; }
  int frame_len() const { return t_; }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(m_) * t_; }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(n_) * d_; }

  /// sqrt(rho0 * M), the amplitude in y = sqrt(rho0 M) B s + z.
  double scale() const { return scale_; }
  double rho0() const { return rho0_; }

  const ChannelState& channel() const { return *channel_; }
  const PrecoderBank& precoders() const { return *precoders_; }

  /// B s (unscaled), computed blockwise as vec(h_n (P_n s_n)^T)/sqrt(M).
  VectorXcd apply(const VectorXcd& s) const;

  /// Adds coeff * B_n s_n into the accumulator (length MT).
  void apply_block_add(int n, const VectorXcd& s_n, cplx coeff,
                       VectorXcd& accum) const;

  /// B_n^H r, matrix-free via the reshaped form (h_n^H R conj(P_n))^T/sqrt(M).
  VectorXcd adjoint_block(int n, const VectorXcd& r) const;

  /// ||B_n^H r||_2 without materializing intermediates beyond one T-vector.
  double adjoint_block_norm(int n, const VectorXcd& r) const;

  /// All N block correlation norms ||B_n^H r||_2 in one pass. Shares one
  /// T x N product U = R^H H across blocks, so one residual scan costs a
  /// single gemm plus N small gemvs instead of N independent traversals.
  Eigen::VectorXd adjoint_block_norms(const VectorXcd& r) const;

  /// Cross-Gram d x d block B_i^H B_j = (h_i^H h_j / M) * P_i^H P_j.
  MatrixXcd cross_gram(int i, int j) const;

  /// Dense materialization of B. Guarded: throws if MT * Nd > max_entries.
  MatrixXcd dense(Eigen::Index max_entries = 1'000'000) const;

 private:
  const ChannelState* channel_;
  const PrecoderBank* precoders_;
  double rho0_;
  double scale_;
  int m_, t_, d_, n_;
};

}  // namespace gfmimo
