// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Machine-parseable output (CSV / JSON manifest)
// goes to files or stdout; human-readable summaries go to stderr.
// Exit codes: 0 success, 1 bad configuration or arguments, 2 runtime failure.

#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfmimo/bomp.hpp"
#include "gfmimo/experiments.hpp"
#include "gfmimo/guarantees.hpp"
#include "gfmimo/presets.hpp"
#include "gfmimo/txchain.hpp"

namespace {

using namespace gfmimo;
namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::pair<std::string, std::string> split_override(const std::string& kv) {
  const auto pos = kv.find('=');
  if (pos == std::string::npos)
    throw std::invalid_argument("override must be key=value: " + kv);
  return {kv.substr(0, pos), kv.substr(pos + 1)};
}

SystemConfig load_config(const std::string& path,
                         const std::vector<std::string>& overrides) {
  SystemConfig cfg = config_from_json_text(slurp(path));
  for (const auto& kv : overrides) {
    const auto [k, v] = split_override(kv);
    apply_override(cfg, k, v);
  }
  const auto errs = validate_config(cfg);
  if (!errs.empty()) {
    std::ostringstream os;
    os << "invalid config " << path << ":";
    for (const auto& e : errs) os << "\n  " << e;
    throw std::invalid_argument(os.str());
  }
  return cfg;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-")
    std::cout << content;
  else
    write_file(out_path, content);
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const std::vector<std::string>& overrides, int trials,
                 int workers) {
  const SystemConfig cfg = load_config(config_path, overrides);
  SweepSpec spec;
  spec.base = cfg;
  spec.axis = "es_n0_db";
  spec.values = {cfg.es_n0_db};
  spec.trials_per_point = trials;
  spec.parallel_workers = workers;
  const auto rows = run_sweep(spec);
  emit(out_path, to_csv(rows));
  std::cerr << "simulate: " << trials << " trials, ser=" << rows[0].ser
            << " fer=" << rows[0].fer << " throughput=" << rows[0].throughput
            << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path,
              const std::vector<std::string>& overrides, int workers) {
  SweepSpec spec = sweep_from_json_text(slurp(config_path));
  for (const auto& kv : overrides) {
    const auto [k, v] = split_override(kv);
    apply_override(spec.base, k, v);
  }
  if (workers > 0) spec.parallel_workers = workers;
  const auto rows = run_sweep(spec);
  emit(out_path, to_csv(rows));
  std::cerr << "sweep: " << rows.size() << " points done\n";
  return 0;
}

int cmd_guarantees(const std::string& config_path, const std::string& out_path,
                   const std::vector<std::string>& overrides, int realizations,
                   double p_e) {
  const SystemConfig cfg = load_config(config_path, overrides);
  std::ostringstream csv;
  csv << "realization,mu_block,sub_coherence,tau,s_min,condition9_holds,lhs9,"
         "rhs9,bound10,thm2_rhs,info_bits_lower,thm2_feasible,max_allowed_n_"
         "active\n";
  std::vector<int> max_nas;
  for (int r = 0; r < realizations; ++r) {
    RngStream ch = RngStream::derive(cfg.seed, r, RngRole::Channel);
    RngStream pr = RngStream::derive(cfg.seed, r, RngRole::Precoder);
    RngStream ms = RngStream::derive(cfg.seed, r, RngRole::Messages);
    RngStream nz = RngStream::derive(cfg.seed, r, RngRole::Noise);
    const ChannelState channel = gen_channel(cfg.n_antennas, cfg.n_online, ch);
    const PrecoderBank precoders = gen_precoders(cfg, pr);
    const MessageFrame messages = gen_messages(cfg, ms);
    const NoiseRealization noise = gen_noise(cfg.n_antennas, cfg.frame_len, nz);
    const BlockOperator op(channel, precoders, cfg.rho0());
    const CoherenceReport rep = coherence_report(
        op, messages, Eigen::Map<const VectorXcd>(noise.z.data(), noise.z.size()));
    const GuaranteeVerdict verdict =
        check_theorem1(rep, cfg.rho0(), cfg.n_antennas, cfg.msg_len,
                       cfg.n_active, cfg.bomp_iters);
    const int max_na =
        max_allowed_active(rep, cfg.rho0(), cfg.n_antennas, cfg.msg_len,
                           cfg.bomp_iters, cfg.n_online);
    max_nas.push_back(max_na);
    const double s_lower = info_bits_lower(
        cfg.n_online, cfg.n_active,
        std::vector<double>(cfg.n_active, 2.0 * cfg.msg_len));
    const double rhs11 = theorem2_rhs(p_e, cfg.rho0(), op, messages.active_set);
    csv << r << ',' << rep.mu_block << ',' << rep.sub_coherence << ','
        << rep.tau << ',' << rep.s_min << ',' << (verdict.condition9_holds ? 1 : 0)
        << ',' << verdict.lhs9 << ',' << verdict.rhs9 << ',';
    if (verdict.bound10)
      csv << *verdict.bound10;
    else
      csv << "inapplicable";
    csv << ',' << rhs11 << ',' << s_lower << ',' << (s_lower <= rhs11 ? 1 : 0)
        << ',' << max_na << '\n';
  }
  // mode of the per-realization maxima
  std::map<int, int> counts;
  for (int v : max_nas) counts[v]++;
  int mode = 0, best = -1;
  for (const auto& [v, c] : counts)
    if (c > best) {
      best = c;
      mode = v;
    }
  emit(out_path, csv.str());
  std::cerr << "guarantees: " << realizations
            << " realizations, mode_max_allowed_n_active=" << mode << "\n";
  return 0;
}

int cmd_reproduce(const std::string& figure, const std::string& scale_str,
                  const std::string& out_dir, int workers, std::uint64_t seed) {
  const PresetScale scale = preset_scale_from_string(scale_str);
  FigurePreset fig = preset(figure, scale, seed);
  fs::create_directories(out_dir);
  nlohmann::json manifest;
  manifest["figure"] = fig.name;
  manifest["scale"] = scale_str;
  manifest["curves"] = nlohmann::json::array();
  for (auto& curve : fig.curves) {
    if (workers > 0) curve.spec.parallel_workers = workers;
    std::cerr << "reproduce " << fig.name << ": curve " << curve.name << " ("
              << curve.spec.values.size() << " points x "
              << curve.spec.trials_per_point << " trials)\n";
    const auto rows = run_sweep(curve.spec);
    const std::string csv_name = fig.name + "_" + curve.name + ".csv";
    write_file((fs::path(out_dir) / csv_name).string(), to_csv(rows));
    nlohmann::json entry;
    entry["curve"] = curve.name;
    entry["csv"] = csv_name;
    entry["spec"] = nlohmann::json::parse(sweep_to_json_text(curve.spec));
    manifest["curves"].push_back(entry);
  }
  write_file((fs::path(out_dir) / (fig.name + "_manifest.json")).string(),
             manifest.dump(2) + "\n");
  std::cerr << "reproduce: wrote " << fig.curves.size() << " curves to "
            << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grant-free uplink block-sparse recovery simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, out_dir = ".", scale = "desk", figure;
  std::vector<std::string> overrides;
  int trials = 100, workers = 0, realizations = 20;
  double p_e = 0.0;
  std::uint64_t seed = 12345;

  auto* sim = app.add_subcommand("simulate", "Monte Carlo at a single parameter point");
  sim->add_option("--config", config_path, "flat JSON SystemConfig")->required();
  sim->add_option("--out", out_path, "output CSV path (default stdout)");
  sim->add_option("--override", overrides, "field=value, repeatable");
  sim->add_option("--trials", trials, "number of trials");
  sim->add_option("--workers", workers, "worker threads (0 = all cores)");

  auto* swp = app.add_subcommand("sweep", "parameter sweep from a sweep-spec JSON");
  swp->add_option("--config", config_path, "sweep spec JSON")->required();
  swp->add_option("--out", out_path, "output CSV path (default stdout)");
  swp->add_option("--override", overrides, "base-config field=value, repeatable");
  swp->add_option("--workers", workers, "worker threads (0 = all cores)");

  auto* gua = app.add_subcommand("guarantees", "coherence diagnostics and recovery conditions");
  gua->add_option("--config", config_path, "flat JSON SystemConfig")->required();
  gua->add_option("--out", out_path, "output CSV path (default stdout)");
  gua->add_option("--override", overrides, "field=value, repeatable");
  gua->add_option("--realizations", realizations, "number of channel realizations");
  gua->add_option("--pe", p_e, "error probability for the information bound");

  auto* rep = app.add_subcommand("reproduce", "run a figure preset (fig1..fig4)");
  rep->add_option("figure", figure, "fig1|fig2|fig3|fig4")->required();
  rep->add_option("--scale", scale, "full|desk (default desk)");
  rep->add_option("--out-dir", out_dir, "output directory (default .)");
  rep->add_option("--workers", workers, "worker threads (0 = all cores)");
  rep->add_option("--seed", seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(config_path, out_path, overrides, trials, workers);
    if (swp->parsed()) return cmd_sweep(config_path, out_path, overrides, workers);
    if (gua->parsed())
      return cmd_guarantees(config_path, out_path, overrides, realizations, p_e);
    if (rep->parsed())
      return cmd_reproduce(figure, scale, out_dir, workers, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
