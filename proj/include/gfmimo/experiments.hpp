// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo harness: per-trial chain, SER/FER/throughput metrics,
// deterministic parameter sweeps with a bounded worker pool, CSV output.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gfmimo/config.hpp"

namespace gfmimo {

enum class Algorithm { Bomp, GenieLs };

std::string to_string(Algorithm a);

struct TrialOutcome {
  long long symbol_errors = 0;
  long long symbols_total = 0;
  long long frame_errors = 0;
  long long frames_total = 0;  // = N_a
  bool support_exact = false;
  bool theorem1_holds = false;
  std::vector<int> bit_errors_per_message;  // per active user, for bookkeeping
  double runtime_ms = 0.0;
};

struct TrialOptions {
  Algorithm algorithm = Algorithm::Bomp;
  bool evaluate_theorem1 = true;
};

/// One full chain: gen_channel -> gen_precoders -> gen_messages -> transmit
/// -> recovery -> decide_messages -> error counting. Deterministic given
/// (cfg.seed, trial_index).
TrialOutcome run_trial(const SystemConfig& cfg, std::uint64_t trial_index,
                       const TrialOptions& opts = {});

/// Total symbol errors / total transmitted symbols over true active users;
/// an active user missing from the recovered support contributes all d of
/// its symbols as errors.
double compute_ser(const std::vector<TrialOutcome>& outcomes);

/// Fraction of active-user messages with bit-error count > threshold.
double compute_fer(const std::vector<TrialOutcome>& outcomes, int threshold_bits);

/// (1 - p_fer) * N_a * d / (M * T)
double normalized_throughput(double p_fer, const SystemConfig& cfg);

/// Wilson 95% score interval for x successes out of n.
std::pair<double, double> wilson_interval(long long x, long long n);

struct SweepSpec {
  SystemConfig base;
  std::string axis;            // one of the SystemConfig field names below
  std::vector<double> values;  // axis values, row order
  int trials_per_point = 100;
  int parallel_workers = 0;    // 0 = hardware concurrency
  Algorithm algorithm = Algorithm::Bomp;
  bool evaluate_theorem1 = true;
};

extern const std::vector<std::string> kSweepAxes;

/// The base config with one axis value applied.
SystemConfig apply_axis(const SystemConfig& base, const std::string& axis,
                        double value);

struct SweepRow {
  double axis_value = 0.0;
  long long trials = 0;
  double ser = 0.0, ser_lo = 0.0, ser_hi = 0.0;
  double fer = 0.0, fer_lo = 0.0, fer_hi = 0.0;
  double throughput = 0.0;
  double thm1_fraction = 0.0;
  double mean_trial_ms = 0.0;
};

/// Validates every point up front (throws before any trial runs), then runs
/// trials_per_point trials per axis value across the worker pool. Results are
/// independent of the worker count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// CSV with the fixed header
/// axis_value,trials,ser,ser_lo,ser_hi,fer,fer_lo,fer_hi,throughput,thm1_fraction,mean_trial_ms
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::string to_csv(const std::vector<SweepRow>& rows);

SweepSpec sweep_from_json_text(const std::string& text);
std::string sweep_to_json_text(const SweepSpec& spec);

}  // namespace gfmimo
