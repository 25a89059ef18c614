// SPDX-License-Identifier: Apache-2.0

#include "gfmimo/bomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "gfmimo/kernels.hpp"
#include "gfmimo/txchain.hpp"

namespace gfmimo {

SingularSupportError::SingularSupportError(std::vector<int> s, double cond)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "support Gram matrix numerically singular (condition estimate "
           << cond << ") for blocks {";
        for (std::size_t i = 0; i < s.size(); ++i)
          os << (i ? "," : "") << s[i];
        os << "}";
        return os.str();
      }()),
      support(std::move(s)),
      condition_estimate(cond) {}

namespace {

constexpr double kCondLimit = 1e12;

// Least-squares state over a growing block support. The Gram matrix
// G_S = B_S^H B_S is assembled from the cross-Gram closed form
// (P_i^H P_j)(h_i^H h_j)/M and extended by one d x d block Cholesky update
// per added block; B is never materialized.
class IncrementalLs {
 public:
  IncrementalLs(const BlockOperator& op, int capacity_blocks)
      : op_(op), d_(op.block_len()) {
    const Eigen::Index cap = static_cast<Eigen::Index>(capacity_blocks) * d_;
    chol_.setZero(cap, cap);
    stacked_p_.resize(op.frame_len(), cap);
    rhs_.resize(cap);
  }

  const std::vector<int>& support() const { return sel_; }
  int size() const { return static_cast<int>(sel_.size()); }

  void add_block(int n, const VectorXcd& y) {
    const int k = size();
    const Eigen::Index kd = static_cast<Eigen::Index>(k) * d_;
    const MatrixXcd& pn = op_.precoders().mats[n];
    const auto& h = op_.channel().h;
    const double inv_m = 1.0 / op_.n_antennas();

    // cross-Gram column against the current support, one batched product
    MatrixXcd cross(kd, d_);
    if (k > 0) {
      cross.noalias() = stacked_p_.leftCols(kd).adjoint() * pn;
      for (int b = 0; b < k; ++b) {
        const cplx hij = h.col(sel_[b]).adjoint() * h.col(n);
        cross.middleRows(static_cast<Eigen::Index>(b) * d_, d_) *= hij * inv_m;
      }
    }
    MatrixXcd diag = (h.col(n).squaredNorm() * inv_m) * (pn.adjoint() * pn);

    // Cholesky extension: L21 = (L11^-1 G12)^H, L22 = chol(G22 - X^H X)
    auto l11 = chol_.topLeftCorner(kd, kd);
    MatrixXcd x;
    if (k > 0) {
      x = l11.triangularView<Eigen::Lower>().solve(cross);
      diag.noalias() -= x.adjoint() * x;
    }
    Eigen::LLT<MatrixXcd> llt(0.5 * (diag + diag.adjoint()));
    std::vector<int> attempted = sel_;
    attempted.push_back(n);
    if (llt.info() != Eigen::Success)
      throw SingularSupportError(attempted, std::numeric_limits<double>::infinity());

    if (k > 0) chol_.block(kd, 0, d_, kd) = x.adjoint();
    chol_.block(kd, kd, d_, d_) = llt.matrixL();

    const auto new_diag = chol_.diagonal().segment(kd, d_).real();
    min_pivot_ = std::min(min_pivot_, new_diag.minCoeff());
    max_pivot_ = std::max(max_pivot_, new_diag.maxCoeff());
    const double cond_est = (max_pivot_ / min_pivot_) * (max_pivot_ / min_pivot_);
    if (!(min_pivot_ > 0.0) || cond_est > kCondLimit)
      throw SingularSupportError(attempted, cond_est);

    rhs_.segment(kd, d_) = op_.adjoint_block(n, y);
    stacked_p_.middleCols(kd, d_) = pn;
    sel_.push_back(n);
  }

  /// Coefficients of the selected blocks, in selection order.
  VectorXcd solve() const {
    const Eigen::Index kd = static_cast<Eigen::Index>(size()) * d_;
    const auto l = chol_.topLeftCorner(kd, kd);
    VectorXcd w = l.triangularView<Eigen::Lower>().solve(rhs_.head(kd));
    l.adjoint().triangularView<Eigen::Upper>().solveInPlace(w);
    return w / op_.scale();
  }

  VectorXcd residual(const VectorXcd& y, const VectorXcd& coeffs) const {
    VectorXcd r = y;
    const cplx neg_scale{-op_.scale(), 0.0};
    for (int b = 0; b < size(); ++b)
      op_.apply_block_add(sel_[b],
                          coeffs.segment(static_cast<Eigen::Index>(b) * d_, d_),
                          neg_scale, r);
    return r;
  }

  VectorXcd scatter(const VectorXcd& coeffs) const {
    VectorXcd s = VectorXcd::Zero(op_.cols());
    for (int b = 0; b < size(); ++b)
      s.segment(static_cast<Eigen::Index>(sel_[b]) * d_, d_) =
          coeffs.segment(static_cast<Eigen::Index>(b) * d_, d_);
    return s;
  }

 private:
  const BlockOperator& op_;
  int d_;
  MatrixXcd chol_;       // lower Cholesky factor of G_S, top-left corner live
  MatrixXcd stacked_p_;  // T x kd stacked precoders of selected blocks
  VectorXcd rhs_;        // B_S^H y
  std::vector<int> sel_;
  double min_pivot_ = std::numeric_limits<double>::infinity();
  double max_pivot_ = 0.0;
};

}  // namespace

RecoveryResult bomp(const BlockOperator& op, const VectorXcd& y, int max_iters,
                    double tol) {
  if (y.size() != op.rows()) throw std::invalid_argument("bomp: y length mismatch");
  const Eigen::Index mt = op.rows();
  const int d = op.block_len();
  if (max_iters < 0 ||
      static_cast<Eigen::Index>(max_iters) * d > mt)
    throw std::invalid_argument("bomp: max_iters exceeds floor(MT/d)");

  IncrementalLs ls(op, max_iters);
  std::vector<char> selected(op.n_blocks(), 0);
  RecoveryResult result;
  result.s_hat = VectorXcd::Zero(op.cols());

  VectorXcd r = y;
  VectorXcd coeffs;
  for (int it = 0; it < max_iters; ++it) {
    // correlation scan over unselected blocks; the argmax is invariant to
    // the positive model scale, so the unscaled operator is used
    int best_idx = -1;
    double best_corr = -1.0;
    const Eigen::VectorXd corr = op.adjoint_block_norms(r);
    for (int n = 0; n < op.n_blocks(); ++n) {
      if (selected[n]) continue;
      if (corr[n] > best_corr) {
        best_corr = corr[n];
        best_idx = n;
      }
    }
    if (best_idx < 0) break;
    ls.add_block(best_idx, y);
    selected[best_idx] = 1;
    coeffs = ls.solve();
    r = ls.residual(y, coeffs);
    result.support.push_back(best_idx);
    result.residual_norms.push_back(r.norm());
    if (result.residual_norms.back() <= tol) break;
  }
  if (!result.support.empty()) result.s_hat = ls.scatter(coeffs);
  return result;
}

RecoveryResult genie_ls(const BlockOperator& op, const VectorXcd& y,
                        const std::vector<int>& true_support, int k,
                        RngStream& rng) {
  if (static_cast<int>(true_support.size()) > k)
    throw std::invalid_argument("genie_ls: |true_support| > k");
  if (y.size() != op.rows())
    throw std::invalid_argument("genie_ls: y length mismatch");

  std::vector<char> in_true(op.n_blocks(), 0);
  for (int n : true_support) in_true.at(n) = 1;
  std::vector<int> off;
  for (int n = 0; n < op.n_blocks(); ++n)
    if (!in_true[n]) off.push_back(n);

  std::vector<int> support = true_support;
  const int extra = k - static_cast<int>(true_support.size());
  if (extra > static_cast<int>(off.size()))
    throw std::invalid_argument("genie_ls: k exceeds number of blocks");
  if (extra > 0) {
    const std::vector<int> picks =
        rng.sample_without_replacement(static_cast<int>(off.size()), extra);
    for (int p : picks) support.push_back(off[p]);
  }

  IncrementalLs ls(op, k);
  for (int n : support) ls.add_block(n, y);
  RecoveryResult result;
  result.support = support;
  if (!support.empty()) {
    const VectorXcd coeffs = ls.solve();
    result.s_hat = ls.scatter(coeffs);
    result.residual_norms.push_back(ls.residual(y, coeffs).norm());
  } else {
    result.s_hat = VectorXcd::Zero(op.cols());
    result.residual_norms.push_back(y.norm());
  }
  return result;
}

std::vector<std::vector<std::uint8_t>> decide_messages(
    const RecoveryResult& result, const SystemConfig& cfg) {
  std::vector<std::vector<std::uint8_t>> bits(cfg.n_online);
  for (int n : result.support) {
    if (n < cfg.n_online)
      bits[n] = demodulate_qpsk(result.block_estimate(n, cfg.msg_len));
  }
  return bits;
}

}  // namespace gfmimo
