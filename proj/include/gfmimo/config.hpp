// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gfmimo {

enum class PrecoderKind { OrthonormalColumns, NormalizedGaussian };

std::string to_string(PrecoderKind k);
PrecoderKind precoder_kind_from_string(const std::string& s);

/// All scalar parameters of one simulation point.
///
/// Symbols: n_online = N, n_active = N_a, n_antennas = M, frame_len = T,
/// msg_len = d, bomp_iters = K.
struct SystemConfig {
  int n_online = 0;
  int n_active = 0;
  int n_antennas = 0;
  int frame_len = 0;
  int msg_len = 0;
  int bomp_iters = 0;
  double es_n0_db = 0.0;
  PrecoderKind precoder_kind = PrecoderKind::OrthonormalColumns;
  int fer_bit_threshold = 8;
  std::uint64_t seed = 0;

  /// Per-symbol receive SNR per antenna. With unit-energy QPSK symbols,
  /// unit-energy precoder columns and unit-variance noise, rho0 is the
  /// linear form of es_n0_db.
  double rho0() const;

  /// Ceiling on BOMP iterations, floor(M*T / d).
  int max_bomp_iters() const;

  bool operator==(const SystemConfig&) const = default;
};

/// Returns an empty list iff every invariant holds; otherwise one message
/// per violated constraint, naming the constraint and the offending values.
std::vector<std::string> validate_config(const SystemConfig& cfg);

/// Flat JSON object with the field names above. Unknown keys are rejected.
SystemConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SystemConfig& cfg);

/// Applies "field=value" to a config. Unknown field names throw.
void apply_override(SystemConfig& cfg, const std::string& key,
                    const std::string& value);

}  // namespace gfmimo
