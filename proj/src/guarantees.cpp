// SPDX-License-Identifier: Apache-2.0

#include "gfmimo/guarantees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace gfmimo {

namespace {

/// Largest singular value of C via the eigendecomposition of C^H C.
double spectral_norm(const MatrixXcd& c) {
  const MatrixXcd g = c.adjoint() * c;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(g, Eigen::EigenvaluesOnly);
  const double lmax = eig.eigenvalues().maxCoeff();
  return lmax > 0.0 ? std::sqrt(lmax) : 0.0;
}

}  // namespace

double block_coherence(const BlockOperator& op) {
  const int n = op.n_blocks();
  if (n < 2) throw std::invalid_argument("block_coherence: needs N >= 2");
  const auto& h = op.channel().h;
  const auto& mats = op.precoders().mats;
  const double inv_m = 1.0 / op.n_antennas();

  // per-block largest singular value of P_n, for the pruning bound
  std::vector<double> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = spectral_norm(mats[i]);

  struct Pair {
    double bound;
    int i, j;
  };
  const MatrixXcd hg = h.adjoint() * h;
  std::vector<Pair> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      pairs.push_back({std::abs(hg(i, j)) * inv_m * sigma[i] * sigma[j], i, j});
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.bound > b.bound; });

  // descending-bound scan: once the bound drops below the best exact value,
  // no remaining pair can win
  double best = 0.0;
  for (const Pair& p : pairs) {
    if (p.bound <= best) break;
    const double exact = std::abs(hg(p.i, p.j)) * inv_m *
                         spectral_norm(mats[p.i].adjoint() * mats[p.j]);
    best = std::max(best, exact);
  }
  return best / op.block_len();
}

double sub_coherence(const BlockOperator& op) {
  const int d = op.block_len();
  if (d <= 1) return 0.0;  // empty maximization
  const auto& h = op.channel().h;
  const auto& mats = op.precoders().mats;
  const double inv_m = 1.0 / op.n_antennas();
  double best = 0.0;
  for (int n = 0; n < op.n_blocks(); ++n) {
    const MatrixXcd g = mats[n].adjoint() * mats[n];
    double off = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) off = std::max(off, std::abs(g(i, j)));
    best = std::max(best, h.col(n).squaredNorm() * inv_m * off);
  }
  return best;
}

double tau_of_noise(const BlockOperator& op, const VectorXcd& z) {
  if (z.size() != op.rows())
    throw std::invalid_argument("tau_of_noise: z length mismatch");
  double best = 0.0;
  for (int n = 0; n < op.n_blocks(); ++n)
    best = std::max(best, op.adjoint_block_norm(n, z));
  return best;
}

std::pair<double, double> signal_extremes(const MessageFrame& messages) {
  if (messages.active_set.empty())
    throw std::invalid_argument("signal_extremes: empty active set");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int n : messages.active_set) {
    const double v = messages.symbols[n].norm();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

CoherenceReport coherence_report(const BlockOperator& op,
                                 const MessageFrame& messages,
                                 const VectorXcd& z) {
  CoherenceReport rep;
  rep.mu_block = block_coherence(op);
  rep.sub_coherence = sub_coherence(op);
  std::tie(rep.s_min, rep.s_max) = signal_extremes(messages);
  rep.tau = tau_of_noise(op, z);
  return rep;
}

GuaranteeVerdict check_theorem1(const CoherenceReport& report, double rho0,
                                int n_antennas, int msg_len, int n_active,
                                int bomp_iters) {
  const double m = n_antennas, d = msg_len, na = n_active, k = bomp_iters;
  const double nu = report.sub_coherence, mu = report.mu_block;
  const double tau = report.tau, sl = report.s_min;
  const double one_plus = 1.0 + (d - 1.0) * nu;
  const double one_minus = 1.0 - (d - 1.0) * nu;

  GuaranteeVerdict v;
  v.lhs9 = rho0 * m * one_minus * one_minus * sl * sl;
  v.rhs9 = tau * tau +
           rho0 * m * d * mu * (2.0 * (na - 1.0) * one_plus + na * na * d * mu) *
               sl * sl +
           2.0 * std::sqrt(rho0 * m) * tau * ((2.0 * na - 1.0) * d * mu + one_plus) *
               sl;
  v.condition9_holds = v.lhs9 > v.rhs9;

  v.bound10_denominator = 1.0 - (d - 1.0) * nu - (k - 1.0) * d * mu;
  if (v.bound10_denominator > 0.0)
    v.bound10 = k * tau * tau /
                (v.bound10_denominator * v.bound10_denominator * rho0 * m);
  return v;
}

bool theorem1_error_holds(const GuaranteeVerdict& verdict, const VectorXcd& s_true,
                          const VectorXcd& s_hat) {
  if (!verdict.bound10)
    throw std::invalid_argument("theorem1_error_holds: bound inapplicable");
  // The bound is an exact-arithmetic statement; when the error attains it
  // with equality (e.g. a single-block support whose correlation attains
  // tau), a relative slack absorbs floating-point rounding of both sides.
  return (s_hat - s_true).squaredNorm() <= *verdict.bound10 * (1.0 + 1e-9);
}

int max_allowed_active(const CoherenceReport& report, double rho0, int n_antennas,
                       int msg_len, int bomp_iters, int n_online) {
  int best = 0;
  for (int na = 1; na <= n_online; ++na) {
    if (check_theorem1(report, rho0, n_antennas, msg_len, na, bomp_iters)
            .condition9_holds)
      best = na;
    else
      break;  // rhs is increasing in N_a, so the first failure is final
  }
  return best;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double info_bits_lower(int n_online, int n_active,
                       const std::vector<double>& bits_per_user) {
  if (n_active > n_online || n_active < 0)
    throw std::invalid_argument("info_bits_lower: N_a must be in [0, N]");
  const double log2_binom =
      (std::lgamma(n_online + 1.0) - std::lgamma(n_active + 1.0) -
       std::lgamma(n_online - n_active + 1.0)) /
      std::log(2.0);
  return log2_binom +
         std::accumulate(bits_per_user.begin(), bits_per_user.end(), 0.0);
}

double theorem2_rhs(double p_e, double rho0, const BlockOperator& op,
                    const std::vector<int>& active_set) {
  if (p_e < 0.0 || p_e >= 1.0)
    throw std::invalid_argument("theorem2_rhs: p_e must be in [0, 1)");
  const int d = op.block_len();
  const int na = static_cast<int>(active_set.size());
  const Eigen::Index nad = static_cast<Eigen::Index>(na) * d;

  // log2 det(I_MT + rho0 B_I B_I^H) = log2 det(I_{Na d} + rho0 B_I^H B_I),
  // Gram assembled from the cross-Gram closed form
  MatrixXcd a = MatrixXcd::Identity(nad, nad);
  for (int bi = 0; bi < na; ++bi)
    for (int bj = 0; bj < na; ++bj)
      a.block(static_cast<Eigen::Index>(bi) * d, static_cast<Eigen::Index>(bj) * d,
              d, d) +=
          rho0 * op.cross_gram(active_set[bi], active_set[bj]);

  Eigen::LLT<MatrixXcd> llt(0.5 * (a + a.adjoint()));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("theorem2_rhs: Cholesky failed on I + rho0 G");
  double log2det = 0.0;
  for (Eigen::Index i = 0; i < nad; ++i)
    log2det += 2.0 * std::log2(llt.matrixLLT()(i, i).real());

  return (binary_entropy(p_e) + log2det) / (1.0 - p_e);
}

}  // namespace gfmimo
