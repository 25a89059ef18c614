// SPDX-License-Identifier: Apache-2.0

#include "gfmimo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "gfmimo/bomp.hpp"
#include "gfmimo/guarantees.hpp"
#include "gfmimo/txchain.hpp"

namespace gfmimo {

using nlohmann::json;

std::string to_string(Algorithm a) {
  return a == Algorithm::Bomp ? "bomp" : "genie_ls";
}

namespace {

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "bomp") return Algorithm::Bomp;
  if (s == "genie_ls") return Algorithm::GenieLs;
  throw std::invalid_argument("unknown algorithm: " + s);
}

}  // namespace

TrialOutcome run_trial(const SystemConfig& cfg, std::uint64_t trial_index,
                       const TrialOptions& opts) {
  const auto errs = validate_config(cfg);
  if (!errs.empty())
    throw std::invalid_argument("run_trial: invalid config: " + errs.front());

  const auto t0 = std::chrono::steady_clock::now();

  RngStream ch_rng = RngStream::derive(cfg.seed, trial_index, RngRole::Channel);
  RngStream pr_rng = RngStream::derive(cfg.seed, trial_index, RngRole::Precoder);
  RngStream ms_rng = RngStream::derive(cfg.seed, trial_index, RngRole::Messages);
  RngStream nz_rng = RngStream::derive(cfg.seed, trial_index, RngRole::Noise);

  const ChannelState channel = gen_channel(cfg.n_antennas, cfg.n_online, ch_rng);
  const PrecoderBank precoders = gen_precoders(cfg, pr_rng);
  const MessageFrame messages = gen_messages(cfg, ms_rng);
  const NoiseRealization noise = gen_noise(cfg.n_antennas, cfg.frame_len, nz_rng);
  const ReceivedFrame received = transmit(cfg, channel, precoders, messages, noise);

  const BlockOperator op(channel, precoders, cfg.rho0());
  const VectorXcd y = received.y_vec();

  RecoveryResult res;
  if (opts.algorithm == Algorithm::Bomp) {
    res = bomp(op, y, cfg.bomp_iters);
  } else {
    RngStream ge_rng = RngStream::derive(cfg.seed, trial_index, RngRole::Genie);
    res = genie_ls(op, y, messages.active_set, cfg.bomp_iters, ge_rng);
  }
  const auto decided = decide_messages(res, cfg);

  TrialOutcome out;
  const int d = cfg.msg_len;
  out.frames_total = cfg.n_active;
  out.support_exact = true;
  for (int k = 0; k < cfg.n_active; ++k) {
    const int n = messages.active_set[k];
    const auto& tx_bits = messages.bits[k];
    int bit_errs = 0;
    int sym_errs = 0;
    if (res.in_support(n)) {
      const auto& rx_bits = decided[n];
      for (std::size_t i = 0; i < tx_bits.size(); i += 2) {
        const bool e0 = tx_bits[i] != rx_bits[i];
        const bool e1 = tx_bits[i + 1] != rx_bits[i + 1];
        bit_errs += static_cast<int>(e0) + static_cast<int>(e1);
        sym_errs += (e0 || e1) ? 1 : 0;
      }
    } else {
      // missed active user: no valid decisions, all symbols and bits wrong
      out.support_exact = false;
      bit_errs = static_cast<int>(tx_bits.size());
      sym_errs = d;
    }
    out.symbol_errors += sym_errs;
    out.symbols_total += d;
    out.bit_errors_per_message.push_back(bit_errs);
    if (bit_errs > cfg.fer_bit_threshold) ++out.frame_errors;
  }

  if (opts.evaluate_theorem1) {
    const CoherenceReport rep = coherence_report(
        op, messages, Eigen::Map<const VectorXcd>(noise.z.data(), noise.z.size()));
    out.theorem1_holds =
        check_theorem1(rep, cfg.rho0(), cfg.n_antennas, cfg.msg_len, cfg.n_active,
                       cfg.bomp_iters)
            .condition9_holds;
  }

  out.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return out;
}

double compute_ser(const std::vector<TrialOutcome>& outcomes) {
  long long errs = 0, total = 0;
  for (const auto& o : outcomes) {
    errs += o.symbol_errors;
    total += o.symbols_total;
  }
  if (total <= 0) throw std::invalid_argument("compute_ser: no symbols");
  return static_cast<double>(errs) / static_cast<double>(total);
}

double compute_fer(const std::vector<TrialOutcome>& outcomes, int threshold_bits) {
  if (threshold_bits < 0)
    throw std::invalid_argument("compute_fer: negative threshold");
  long long errs = 0, total = 0;
  for (const auto& o : outcomes) {
    total += o.frames_total;
    for (int be : o.bit_errors_per_message)
      if (be > threshold_bits) ++errs;
  }
  if (total <= 0) return 0.0;
  return static_cast<double>(errs) / static_cast<double>(total);
}

double normalized_throughput(double p_fer, const SystemConfig& cfg) {
  if (p_fer < 0.0 || p_fer > 1.0)
    throw std::invalid_argument("normalized_throughput: p_fer out of [0,1]");
  return (1.0 - p_fer) * cfg.n_active * cfg.msg_len /
         (static_cast<double>(cfg.n_antennas) * cfg.frame_len);
}

std::pair<double, double> wilson_interval(long long x, long long n) {
  if (n <= 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 95%
  const double p = static_cast<double>(x) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = p + z2n / 2.0;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n));
  return {std::max(0.0, (center - half) / denom),
          std::min(1.0, (center + half) / denom)};
}

const std::vector<std::string> kSweepAxes = {
    "es_n0_db", "n_active",   "n_online",     "n_antennas",
    "frame_len", "bomp_iters", "precoder_kind"};

SystemConfig apply_axis(const SystemConfig& base, const std::string& axis,
                        double value) {
  SystemConfig cfg = base;
  if (axis == "es_n0_db") {
    cfg.es_n0_db = value;
    return cfg;
  }
  if (axis == "precoder_kind") {
    if (value != 0.0 && value != 1.0)
      throw std::invalid_argument("precoder_kind axis values must be 0 or 1");
    cfg.precoder_kind = value == 0.0 ? PrecoderKind::OrthonormalColumns
                                     : PrecoderKind::NormalizedGaussian;
    return cfg;
  }
  const int v = static_cast<int>(std::llround(value));
  if (static_cast<double>(v) != value)
    throw std::invalid_argument("axis " + axis + " requires integer values");
  if (axis == "n_active") cfg.n_active = v;
  else if (axis == "n_online") cfg.n_online = v;
  else if (axis == "n_antennas") cfg.n_antennas = v;
  else if (axis == "frame_len") cfg.frame_len = v;
  else if (axis == "bomp_iters") cfg.bomp_iters = v;
  else throw std::invalid_argument("unknown sweep axis: " + axis);
  return cfg;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  // validate every point before any trial runs
  std::vector<SystemConfig> points;
  points.reserve(spec.values.size());
  for (double v : spec.values) {
    SystemConfig cfg = apply_axis(spec.base, spec.axis, v);
    const auto errs = validate_config(cfg);
    if (!errs.empty()) {
      std::ostringstream os;
      os << "invalid sweep point " << spec.axis << "=" << v << ": " << errs.front();
      throw std::invalid_argument(os.str());
    }
    points.push_back(std::move(cfg));
  }

  int workers = spec.parallel_workers;
  if (workers <= 0)
    workers = std::max(1u, std::thread::hardware_concurrency());

  const TrialOptions opts{spec.algorithm, spec.evaluate_theorem1};
  std::vector<SweepRow> rows;
  for (std::size_t p = 0; p < points.size(); ++p) {
    const SystemConfig& cfg = points[p];
    std::vector<TrialOutcome> outcomes(spec.trials_per_point);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_msg;
    std::mutex error_mu;
    auto work = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= spec.trials_per_point || failed.load()) break;
        try {
          outcomes[i] = run_trial(cfg, static_cast<std::uint64_t>(i), opts);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mu);
          error_msg = e.what();
          failed.store(true);
          break;
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("run_sweep: trial failed: " + error_msg);

    SweepRow row;
    row.axis_value = spec.values[p];
    row.trials = spec.trials_per_point;
    long long sym_err = 0, sym_tot = 0, frm_err = 0, frm_tot = 0, thm1 = 0;
    double ms = 0.0;
    for (const auto& o : outcomes) {
      sym_err += o.symbol_errors;
      sym_tot += o.symbols_total;
      frm_err += o.frame_errors;
      frm_tot += o.frames_total;
      thm1 += o.theorem1_holds ? 1 : 0;
      ms += o.runtime_ms;
    }
    row.ser = static_cast<double>(sym_err) / sym_tot;
    std::tie(row.ser_lo, row.ser_hi) = wilson_interval(sym_err, sym_tot);
    row.fer = static_cast<double>(frm_err) / frm_tot;
    std::tie(row.fer_lo, row.fer_hi) = wilson_interval(frm_err, frm_tot);
    row.throughput = normalized_throughput(row.fer, cfg);
    row.thm1_fraction =
        static_cast<double>(thm1) / static_cast<double>(outcomes.size());
    row.mean_trial_ms = ms / static_cast<double>(outcomes.size());
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "axis_value,trials,ser,ser_lo,ser_hi,fer,fer_lo,fer_hi,throughput,"
        "thm1_fraction,mean_trial_ms\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line << std::setprecision(12) << r.axis_value << ',' << r.trials << ','
         << r.ser << ',' << r.ser_lo << ',' << r.ser_hi << ',' << r.fer << ','
         << r.fer_lo << ',' << r.fer_hi << ',' << r.throughput << ','
         << r.thm1_fraction << ',' << std::setprecision(4) << r.mean_trial_ms
         << '\n';
    os << line.str();
  }
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

namespace {
const std::set<std::string> kSweepKeys = {
    "base",  "axis",  "values", "trials_per_point", "parallel_workers",
    "algorithm", "evaluate_theorem1"};
}

SweepSpec sweep_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("sweep spec must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    (void)val;
    if (!kSweepKeys.count(key))
      throw std::invalid_argument("unknown sweep key: " + key);
  }
  SweepSpec spec;
  spec.base = config_from_json_text(j.at("base").dump());
  spec.axis = j.at("axis").get<std::string>();
  if (std::find(kSweepAxes.begin(), kSweepAxes.end(), spec.axis) ==
      kSweepAxes.end())
    throw std::invalid_argument("unknown sweep axis: " + spec.axis);
  spec.values = j.at("values").get<std::vector<double>>();
  if (j.contains("trials_per_point"))
    spec.trials_per_point = j.at("trials_per_point").get<int>();
  if (j.contains("parallel_workers"))
    spec.parallel_workers = j.at("parallel_workers").get<int>();
  if (j.contains("algorithm"))
    spec.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  if (j.contains("evaluate_theorem1"))
    spec.evaluate_theorem1 = j.at("evaluate_theorem1").get<bool>();
  return spec;
}

std::string sweep_to_json_text(const SweepSpec& spec) {
  json j;
  j["base"] = json::parse(config_to_json_text(spec.base));
  j["axis"] = spec.axis;
  j["values"] = spec.values;
  j["trials_per_point"] = spec.trials_per_point;
  j["parallel_workers"] = spec.parallel_workers;
  j["algorithm"] = to_string(spec.algorithm);
  j["evaluate_theorem1"] = spec.evaluate_theorem1;
  return j.dump(2);
}

}  // namespace gfmimo
