// SPDX-License-Identifier: Apache-2.0

#include "gfmimo/block_operator.hpp"

#include <cmath>
#include <stdexcept>

#include "gfmimo/kernels.hpp"

namespace gfmimo {

namespace ker = kernels;

BlockOperator::BlockOperator(const ChannelState& channel,
                             const PrecoderBank& precoders, double rho0)
    : channel_(&channel),
      precoders_(&precoders),
      rho0_(rho0),
      m_(channel.n_antennas()),
      t_(precoders.frame_len()),
      d_(precoders.msg_len()),
      n_(channel.n_users()) {
  if (static_cast<int>(precoders.mats.size()) != n_)
    throw std::invalid_argument("BlockOperator: precoder count != channel users");
  scale_ = std::sqrt(rho0 * m_);
}

void BlockOperator::apply_block_add(int n, const VectorXcd& s_n, cplx coeff,
                                    VectorXcd& accum) const {
  if (n < 0 || n >= n_) throw std::out_of_range("apply_block_add: block index");
  if (s_n.size() != d_ || accum.size() != rows())
    throw std::invalid_argument("apply_block_add: length mismatch");
  const MatrixXcd& P = precoders_->mats[n];
  // x = P_n s_n via d axpys over contiguous columns
  VectorXcd x = VectorXcd::Zero(t_);
  for (int j = 0; j < d_; ++j)
    ker::zaxpy(s_n[j], P.col(j).data(), x.data(), static_cast<std::size_t>(t_));
  // accum(:, t) += coeff * x_t * h_n / sqrt(M), column t of the M x T view
  const cplx* h = channel_->h.col(n).data();
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m_));
  for (int t = 0; t < t_; ++t) {
    const cplx c = coeff * x[t] * inv_sqrt_m;
    ker::zaxpy(c, h, accum.data() + static_cast<Eigen::Index>(t) * m_,
               static_cast<std::size_t>(m_));
  }
}

VectorXcd BlockOperator::apply(const VectorXcd& s) const {
  if (s.size() != cols()) throw std::invalid_argument("apply: length mismatch");
  VectorXcd y = VectorXcd::Zero(rows());
  for (int n = 0; n < n_; ++n) {
    const auto block = s.segment(static_cast<Eigen::Index>(n) * d_, d_);
    if (block.isZero(0.0)) continue;
    apply_block_add(n, block, cplx{1.0, 0.0}, y);
  }
  return y;
}

VectorXcd BlockOperator::adjoint_block(int n, const VectorXcd& r) const {
  if (n < 0 || n >= n_) throw std::out_of_range("adjoint_block: block index");
  if (r.size() != rows())
    throw std::invalid_argument("adjoint_block: length mismatch");
  const cplx* h = channel_->h.col(n).data();
  // u_t = h_n^H R e_t over the M x T reshape of r
  VectorXcd u(t_);
  for (int t = 0; t < t_; ++t)
    u[t] = ker::zdotc(h, r.data() + static_cast<Eigen::Index>(t) * m_,
                      static_cast<std::size_t>(m_));
  const MatrixXcd& P = precoders_->mats[n];
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m_));
  VectorXcd out(d_);
  for (int j = 0; j < d_; ++j)
    out[j] = ker::zdotc(P.col(j).data(), u.data(), static_cast<std::size_t>(t_)) *
             inv_sqrt_m;
  return out;
}

double BlockOperator::adjoint_block_norm(int n, const VectorXcd& r) const {
  const VectorXcd v = adjoint_block(n, r);
  return std::sqrt(ker::znrm2sq(v.data(), static_cast<std::size_t>(v.size())));
}

Eigen::VectorXd BlockOperator::adjoint_block_norms(const VectorXcd& r) const {
  if (r.size() != rows())
    throw std::invalid_argument("adjoint_block_norms: length mismatch");
  const Eigen::Map<const MatrixXcd> R(r.data(), m_, t_);
  // Row n of W is h_n^H R, the shared inner factor of every B_n^H r.
  const MatrixXcd W = channel_->h.adjoint() * R;
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m_));
  Eigen::VectorXd norms(n_);
  VectorXcd v(d_);
  for (int n = 0; n < n_; ++n) {
    v.noalias() = precoders_->mats[n].adjoint() * W.row(n).transpose();
    norms[n] = inv_sqrt_m * v.norm();
  }
  return norms;
}

MatrixXcd BlockOperator::cross_gram(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw std::out_of_range("cross_gram: block index");
  const cplx hij = ker::zdotc(channel_->h.col(i).data(), channel_->h.col(j).data(),
                              static_cast<std::size_t>(m_));
  return (hij / static_cast<double>(m_)) *
         (precoders_->mats[i].adjoint() * precoders_->mats[j]);
}

MatrixXcd BlockOperator::dense(Eigen::Index max_entries) const {
  if (rows() * cols() > max_entries)
    throw std::invalid_argument("dense: instance too large for materialization");
  MatrixXcd B(rows(), cols());
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m_));
  for (int n = 0; n < n_; ++n) {
    const MatrixXcd& P = precoders_->mats[n];
    const auto h = channel_->h.col(n);
    for (int j = 0; j < d_; ++j) {
      // column (n*d + j) = vec(h p_j^T)/sqrt(M)
      for (int t = 0; t < t_; ++t)
        B.col(static_cast<Eigen::Index>(n) * d_ + j)
            .segment(static_cast<Eigen::Index>(t) * m_, m_) =
            inv_sqrt_m * P(t, j) * h;
    }
  }
  return B;
}

}  // namespace gfmimo
