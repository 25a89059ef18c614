// SPDX-License-Identifier: Apache-2.0
//
// Block orthogonal matching pursuit with incremental Gram/Cholesky least
// squares, plus the genie-aided LS baseline.

#pragma once

#include <cstdint>
#include <vector>

#include "gfmimo/block_operator.hpp"
#include "gfmimo/rng.hpp"

namespace gfmimo {

struct RecoveryResult {
  std::vector<int> support;  // selection order
  VectorXcd s_hat;           // length Nd, zero outside the selected blocks
  std::vector<double> residual_norms;  // ||r||_2 after each LS solve

  bool in_support(int n) const {
    for (int s : support)
      if (s == n) return true;
    return false;
  }
  VectorXcd block_estimate(int n, int d) const {
    return s_hat.segment(static_cast<Eigen::Index>(n) * d, d);
  }
};

/// Thrown when the support Gram matrix becomes numerically singular.
struct SingularSupportError : std::runtime_error {
  std::vector<int> support;
  double condition_estimate;
  SingularSupportError(std::vector<int> s, double cond);
};

/// BOMP: per iteration select argmax_i ||B_i^H r||_2 over unselected blocks
/// (ties resolve to the lower index), extend the support, re-fit all selected
/// blocks by least squares against y = sqrt(rho0 M) B s, update the residual.
/// Stops after max_iters iterations or once ||r||_2 <= tol.
RecoveryResult bomp(const BlockOperator& op, const VectorXcd& y, int max_iters,
                    double tol = 0.0);

/// Least squares over the true support plus (k - |true_support|) uniformly
/// random off-support blocks.
RecoveryResult genie_ls(const BlockOperator& op, const VectorXcd& y,
                        const std::vector<int>& true_support, int k,
                        RngStream& rng);

/// Demodulated bits per user: users in the support get demodulate_qpsk of
/// their block estimate; users outside get an empty vector (no valid bits).
std::vector<std::vector<std::uint8_t>> decide_messages(
    const RecoveryResult& result, const SystemConfig& cfg);

}  // namespace gfmimo
