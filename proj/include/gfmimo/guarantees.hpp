// SPDX-License-Identifier: Apache-2.0
//
// Coherence diagnostics of the block sensing operator and the two recovery
// conditions: the deterministic BOMP support/error guarantee and the
// information-theoretic necessary condition.

#pragma once

#include <optional>
#include <vector>

#include "gfmimo/block_operator.hpp"
#include "gfmimo/types.hpp"

namespace gfmimo {

struct CoherenceReport {
  double mu_block = 0.0;      // (1/d) max_{i!=j} ||B_i^H B_j||_2
  double sub_coherence = 0.0; // max within-block |b_i^H b_j|, i != j
  double s_min = 0.0;         // min_{i in I} ||s_i||_2
  double s_max = 0.0;         // max_{i in I} ||s_i||_2
  double tau = 0.0;           // max_j ||B_j^H z||_2
};

struct GuaranteeVerdict {
  bool condition9_holds = false;
  double lhs9 = 0.0;
  double rhs9 = 0.0;
  /// Squared-error bound; present iff 1 - (d-1)nu - (K-1) d mu_B > 0.
  std::optional<double> bound10;
  double bound10_denominator = 0.0;  // 1 - (d-1)nu - (K-1) d mu_B
};

struct InfoBoundReport {
  double s_bits_lower = 0.0;  // log2 C(N, N_a) + sum b_i
  double rhs11 = 0.0;
  bool feasible = false;      // s_bits_lower <= rhs11
};

/// Block-coherence, exact: closed form ||B_i^H B_j|| = (|h_i^H h_j|/M) ||P_i^H P_j||,
/// with the pair scan pruned by the bound ||P_i^H P_j|| <= sigma_max(P_i) sigma_max(P_j).
double block_coherence(const BlockOperator& op);

/// Sub-coherence: max over blocks n, column pairs i != j within the block, of
/// |b_i^H b_j| = (||h_n||^2/M) |p_i^H p_j|. Zero for d = 1.
double sub_coherence(const BlockOperator& op);

/// tau = max_j ||B_j^H z||_2 for an actual noise realization z (length MT).
double tau_of_noise(const BlockOperator& op, const VectorXcd& z);

/// (s_min, s_max) over the active set; throws on an empty active set.
std::pair<double, double> signal_extremes(const MessageFrame& messages);

CoherenceReport coherence_report(const BlockOperator& op,
                                 const MessageFrame& messages,
                                 const VectorXcd& z);

/// Evaluates the support-recovery inequality and, when its positivity
/// condition holds, the squared-error bound.
GuaranteeVerdict check_theorem1(const CoherenceReport& report, double rho0,
                                int n_antennas, int msg_len, int n_active,
                                int bomp_iters);

/// True iff ||s_hat - s||_2^2 <= bound10. Throws if the bound is inapplicable.
bool theorem1_error_holds(const GuaranteeVerdict& verdict, const VectorXcd& s_true,
                          const VectorXcd& s_hat);

/// Largest N_a in [1, n_online] for which the inequality holds with the given
/// realized coherences; 0 if it fails already at N_a = 1.
int max_allowed_active(const CoherenceReport& report, double rho0, int n_antennas,
                       int msg_len, int bomp_iters, int n_online);

/// log2 C(N, N_a) + sum b_i, binomial via log-gamma.
double info_bits_lower(int n_online, int n_active,
                       const std::vector<double>& bits_per_user);

/// (1/(1-p_e)) [H(p_e) + log2 det(I + rho0 B_I B_I^H)], evaluated on the
/// N_a d x N_a d Gram form (equal to the MT x MT form by det(I+AB)=det(I+BA)).
double theorem2_rhs(double p_e, double rho0, const BlockOperator& op,
                    const std::vector<int>& active_set);

/// Binary entropy in bits, H(0) = H(1) = 0 by continuity.
double binary_entropy(double p);

}  // namespace gfmimo
